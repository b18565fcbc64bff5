# every group is causally mixing, yet Y and Z are independent given W at the grouped-summary level
process Y1
process Z1
process W1
process W2
tsedge Y1 -> Y1 lag 1
tsedge Z1 -> Z1 lag 1
tsedge W1 -> W1 lag 1
tsedge W2 -> W2 lag 1
tsedge W1 -> W2 lag 1
tsedge W2 -> W1 lag 1
tsedge Y1 -> W1 lag 1
tsedge Z1 -> W2 lag 1
group Y = Y1
group Z = Z1
group W = W1, W2
