#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupcausal/faithfulness.hpp"
#include "groupcausal/grouping.hpp"
#include "groupcausal/mixed_graph.hpp"
#include "groupcausal/walk.hpp"

namespace groupcausal {

/// Directed: source(t - lag) -> target(t). Bidirected: source(t - lag) <-> target(t).
struct LagEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    unsigned lag = 0;
    EdgeKind kind = EdgeKind::Directed;

    friend auto operator<=>(const LagEdge&, const LagEdge&) = default;
};

/// Stationary time-series template: the lag edges repeat at every time step.
class TsTemplate {
public:
    /// Throws Error(DuplicateLabel), Error(UnknownEndpoint), Error(SelfEdge) for lag-0 self edges,
    /// Error(DuplicateEdge), Error(InvalidArgument) for undirected lag edges.
    static TsTemplate make(std::vector<std::string> processes, std::vector<LagEdge> edges);

    const std::vector<std::string>& processes() const noexcept { return processes_; }
    const std::vector<LagEdge>& edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return processes_.size(); }
    unsigned max_lag() const noexcept { return max_lag_; }
    /// Throws Error(UnknownNode).
    std::size_t index(const std::string& process) const;

private:
    std::vector<std::string> processes_;
    std::vector<LagEdge> edges_;  // sorted
    unsigned max_lag_ = 0;
};

struct Window {
    int start = 0;
    int end = 0;  // inclusive

    int length() const noexcept { return end - start + 1; }
};

std::string ts_label(const std::string& name, int time);  // "X@3"

struct Unrolled {
    MixedGraph graph;       // node (i, s) has id (s - start) * processes + i
    Partition by_process;   // blocks X_i x window, labelled by process
    Window window;

    NodeId node(std::size_t process, int time) const;
};

/// Throws Error(EmptyWindow) if start > end.
Unrolled unroll(const TsTemplate& t, const Window& w);

MixedGraph summary_graph(const TsTemplate& t);

/// A partition of the template's processes, read against summary_graph(t).
using ProcessPartition = Partition;

/// Coarsening of the unrolled window by (group, time) blocks labelled "G@t".
MixedGraph grouped_ts_dmg(const TsTemplate& t, const ProcessPartition& q, const Window& w);
/// The (group, time) partition of unroll(t, w).
Partition contemporaneous_partition(const TsTemplate& t, const ProcessPartition& q, const Window& w);
/// The (group, whole window) partition of unroll(t, w), labelled by group.
Partition group_window_partition(const TsTemplate& t, const ProcessPartition& q, const Window& w);

MixedGraph grouped_summary(const TsTemplate& t, const ProcessPartition& q);

struct MixingOptions {
    bool strict = true;              // internal walks use lag-1 edges only
    bool include_self_pairs = true;  // pairs (i, i) also need a walk of length >= 1
};

struct MixingReport {
    std::vector<bool> per_group;
    bool overall = false;
};

MixingReport is_causally_mixing(const TsTemplate& t, const ProcessPartition& q, const MixingOptions& opt = {});

struct CausationWitness {
    std::vector<GroupId> coarse_path;  // directed path in grouped_summary
    bool apparent = true;
    bool true_cause = false;
    Window window;
    Walk micro_path;  // directed path in unroll(t, window)
};

/// For every simple directed path of the grouped summary graph, a directed micro path realising it, assembled from
/// one crossing edge per coarse edge joined by within-group walks. Each witness is checked against the unrolled
/// window. Throws Error(NotMixing) unless the template mixes under `opt`.
std::vector<CausationWitness> check_mixing_causation(const TsTemplate& t, const ProcessPartition& q,
                                                     const MixingOptions& opt = {});

enum class TsLevel : std::uint8_t { GroupedTs, GroupedSummary };

struct TsFaithfulness {
    MixedGraph micro;
    Partition partition;
    FaithfulnessReport report;
};

/// Faithfulness search on the unrolled window under the (group, time) or (group, window) partition. max_cond is
/// capped at the number of blocks minus two.
TsFaithfulness ts_faithfulness_check(const TsTemplate& t, const ProcessPartition& q, TsLevel level, const Window& w,
                                     std::size_t max_cond, SeparationKind kind = SeparationKind::Sigma,
                                     unsigned jobs = 1);

}  // namespace groupcausal
