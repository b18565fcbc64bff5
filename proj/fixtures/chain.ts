process X
process Y
process Z
tsedge X -> X lag 1
tsedge Y -> Y lag 1
tsedge Z -> Z lag 1
tsedge X -> Y lag 0
tsedge Y -> Z lag 0
