#include "scg/partition.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "scg/digraph.hpp"
#include "scg/error.hpp"

namespace scg {

namespace {

using Vertex = std::size_t;

// Undirected graph in compressed adjacency form with vertex and edge weights;
// coarse levels accumulate both.
struct Graph {
    std::vector<std::size_t> xadj{0};
    std::vector<Vertex> adj;
    std::vector<long> ewgt;
    std::vector<long> vwgt;
    long total = 0;

    std::size_t size() const { return vwgt.size(); }
};

Graph fromAdjacency(const Adjacency& a) {
    Graph g;
    g.vwgt.assign(a.size(), 1);
    g.total = static_cast<long>(a.size());
    for (const auto& list : a) {
        for (auto u : list) {
            g.adj.push_back(u);
            g.ewgt.push_back(1);
        }
        g.xadj.push_back(g.adj.size());
    }
    return g;
}

// Draws with a plain modulo so sequences do not depend on the standard
// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
    std::mt19937_64 engine_;
};

std::vector<Vertex> shuffled(std::size_t n, Rng& rng) {
    std::vector<Vertex> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    return order;
}

Graph coarsen(const Graph& g, Rng& rng, long maxVwgt, std::vector<Vertex>& cmap) {
    const auto n = g.size();
    constexpr auto kUnmatched = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> match(n, kUnmatched);
    for (auto v : shuffled(n, rng)) {
        if (match[v] != kUnmatched) continue;
        auto best = v;
        long bestW = 0;
        for (auto e = g.xadj[v]; e < g.xadj[v + 1]; ++e) {
            auto u = g.adj[e];
            if (match[u] != kUnmatched || g.vwgt[v] + g.vwgt[u] > maxVwgt) continue;
            if (g.ewgt[e] > bestW) {
                bestW = g.ewgt[e];
                best = u;
            }
        }
        match[v] = best;
        match[best] = v;
    }

    cmap.assign(n, kUnmatched);
    std::vector<std::vector<Vertex>> members;
    for (Vertex v = 0; v < n; ++v) {
        if (cmap[v] != kUnmatched) continue;
        cmap[v] = members.size();
        cmap[match[v]] = members.size();
        members.push_back(match[v] == v ? std::vector<Vertex>{v} : std::vector<Vertex>{v, match[v]});
    }

    Graph c;
    c.total = g.total;
    std::vector<long> acc(members.size(), 0);
    std::vector<char> seen(members.size(), 0);
    std::vector<Vertex> touched;
    for (Vertex cv = 0; cv < members.size(); ++cv) {
        long w = 0;
        touched.clear();
        for (auto v : members[cv]) {
            w += g.vwgt[v];
            for (auto e = g.xadj[v]; e < g.xadj[v + 1]; ++e) {
                auto cu = cmap[g.adj[e]];
                if (cu == cv) continue;
                if (!seen[cu]) {
                    seen[cu] = 1;
                    touched.push_back(cu);
                }
                acc[cu] += g.ewgt[e];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (auto cu : touched) {
            c.adj.push_back(cu);
            c.ewgt.push_back(acc[cu]);
            acc[cu] = 0;
            seen[cu] = 0;
        }
        c.xadj.push_back(c.adj.size());
        c.vwgt.push_back(w);
    }
    return c;
}

long weightedCut(const Graph& g, const std::vector<int>& part) {
    long cut = 0;
    for (Vertex v = 0; v < g.size(); ++v)
        for (auto e = g.xadj[v]; e < g.xadj[v + 1]; ++e)
            if (part[v] != part[g.adj[e]]) cut += g.ewgt[e];
    return cut / 2;
}

std::vector<long> partWeights(const Graph& g, const std::vector<int>& part, int k) {
    std::vector<long> pw(static_cast<std::size_t>(k), 0);
    for (Vertex v = 0; v < g.size(); ++v) pw[static_cast<std::size_t>(part[v])] += g.vwgt[v];
    return pw;
}

std::vector<std::size_t> partCounts(const std::vector<int>& part, int k) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (auto p : part) ++counts[static_cast<std::size_t>(p)];
    return counts;
}

// Greedy graph growing: partitions 0..k-2 are grown one at a time from a
// pseudo-peripheral seed, always absorbing the frontier vertex most strongly
// connected to the growing region; the remainder forms partition k-1.
std::vector<int> growPartitions(const Graph& g, int k, long cap, Rng& rng) {
    const auto n = g.size();
    std::vector<int> part(n, -1);
    const auto order = shuffled(n, rng);
    std::size_t cursor = 0;
    long remaining = g.total;
    std::vector<long> gain(n, 0);
    std::vector<char> rejected(n, 0);
    std::vector<long> dist(n, -1);

    auto free = [&](Vertex v) { return part[v] < 0 && !rejected[v]; };
    auto nextSeed = [&]() -> std::optional<Vertex> {
        while (cursor < n && !free(order[cursor])) ++cursor;
        if (cursor == n) return std::nullopt;
        // farthest free vertex from a random free start
        auto start = order[cursor];
        std::vector<Vertex> visited{start};
        dist[start] = 0;
        for (std::size_t i = 0; i < visited.size(); ++i) {
            auto v = visited[i];
            for (auto e = g.xadj[v]; e < g.xadj[v + 1]; ++e) {
                auto u = g.adj[e];
                if (free(u) && dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    visited.push_back(u);
                }
            }
        }
        for (auto v : visited) dist[v] = -1;
        return visited.back();
    };

    for (int p = 0; p + 1 < k; ++p) {
        const long parts = k - p;
        const long target = (remaining + parts / 2) / parts;
        long weight = 0;
        std::fill(gain.begin(), gain.end(), 0);
        std::fill(rejected.begin(), rejected.end(), 0);
        cursor = 0;
        std::priority_queue<std::pair<long, long>> frontier;  // (gain, -vertex)
        while (weight < target) {
            std::optional<Vertex> pick;
            while (!frontier.empty()) {
                auto [gv, negv] = frontier.top();
                frontier.pop();
                auto v = static_cast<Vertex>(-negv);
                if (free(v) && gain[v] == gv) {
                    pick = v;
                    break;
                }
            }
            if (!pick) pick = nextSeed();
            if (!pick) break;
            auto v = *pick;
            if (weight + g.vwgt[v] > cap) {
                rejected[v] = 1;
                continue;
            }
            part[v] = p;
            weight += g.vwgt[v];
            for (auto e = g.xadj[v]; e < g.xadj[v + 1]; ++e) {
                auto u = g.adj[e];
                if (!free(u)) continue;
                gain[u] += g.ewgt[e];
                frontier.push({gain[u], -static_cast<long>(u)});
            }
        }
        remaining -= weight;
    }
    for (auto& p : part)
        if (p < 0) p = k - 1;
    return part;
}

// Connectivity of v to each partition, gathered into a scratch buffer.
class Connectivity {
public:
    explicit Connectivity(int k) : conn_(static_cast<std::size_t>(k), 0) {}

    void gather(const Graph& g, const std::vector<int>& part, Vertex v) {
        for (auto p : touched_) conn_[static_cast<std::size_t>(p)] = 0;
        touched_.clear();
        for (auto e = g.xadj[v]; e < g.xadj[v + 1]; ++e) {
            auto p = part[g.adj[e]];
            if (conn_[static_cast<std::size_t>(p)] == 0) touched_.push_back(p);
            conn_[static_cast<std::size_t>(p)] += g.ewgt[e];
        }
        std::sort(touched_.begin(), touched_.end());
    }

    long operator[](int p) const { return conn_[static_cast<std::size_t>(p)]; }
    const std::vector<int>& touched() const { return touched_; }

private:
    std::vector<long> conn_;
    std::vector<int> touched_;
};

struct Move {
    long gain = 0;
    int to = -1;
};

// Best admissible move of v: the target must stay within cap and the source
// must not become empty. Only partitions adjacent to v are considered unless
// `anyTarget` is set.
Move bestMove(const Graph& g, const std::vector<int>& part, Vertex v, const std::vector<long>& pw,
              const std::vector<std::size_t>& counts, long cap, Connectivity& conn, bool anyTarget = false) {
    const int from = part[v];
    Move best;
    if (counts[static_cast<std::size_t>(from)] <= 1) return best;
    conn.gather(g, part, v);
    auto consider = [&](int p) {
        if (p == from || pw[static_cast<std::size_t>(p)] + g.vwgt[v] > cap) return;
        long gain = conn[p] - conn[from];
        if (best.to < 0 || gain > best.gain) best = {gain, p};
    };
    if (anyTarget) {
        for (int p = 0; p < static_cast<int>(pw.size()); ++p) consider(p);
    } else {
        for (auto p : conn.touched()) consider(p);
    }
    return best;
}

void applyMove(const Graph& g, std::vector<int>& part, Vertex v, int to, std::vector<long>& pw,
               std::vector<std::size_t>& counts) {
    auto from = static_cast<std::size_t>(part[v]);
    pw[from] -= g.vwgt[v];
    --counts[from];
    pw[static_cast<std::size_t>(to)] += g.vwgt[v];
    ++counts[static_cast<std::size_t>(to)];
    part[v] = to;
}

// Moves vertices out of overweight partitions, cheapest first.
void rebalance(const Graph& g, std::vector<int>& part, int k, long cap) {
    auto pw = partWeights(g, part, k);
    auto counts = partCounts(part, k);
    Connectivity conn(k);
    for (int round = 0; round < 8; ++round) {
        bool moved = false;
        for (int a = 0; a < k; ++a) {
            if (pw[static_cast<std::size_t>(a)] <= cap) continue;
            std::vector<std::pair<long, Vertex>> candidates;
            for (Vertex v = 0; v < g.size(); ++v) {
                if (part[v] != a) continue;
                auto m = bestMove(g, part, v, pw, counts, cap, conn, true);
                if (m.to >= 0) candidates.push_back({-m.gain, v});
            }
            std::sort(candidates.begin(), candidates.end());
            for (auto [negGain, v] : candidates) {
                if (pw[static_cast<std::size_t>(a)] <= cap) break;
                auto m = bestMove(g, part, v, pw, counts, cap, conn, true);
                if (m.to < 0) continue;
                applyMove(g, part, v, m.to, pw, counts);
                moved = true;
            }
        }
        if (!moved) break;
    }
}

// k-way Fiduccia-Mattheyses: each pass moves every boundary vertex at most
// once in best-gain order, then rolls back to the best prefix.
void refineFm(const Graph& g, std::vector<int>& part, int k, long cap) {
    const auto n = g.size();
    Connectivity conn(k);
    auto order = [](const std::pair<long, Vertex>& a, const std::pair<long, Vertex>& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    };
    for (int pass = 0; pass < 8; ++pass) {
        auto pw = partWeights(g, part, k);
        auto counts = partCounts(part, k);
        std::vector<char> locked(n, 0);
        std::vector<long> key(n, 0);
        std::vector<char> queued(n, 0);
        std::set<std::pair<long, Vertex>, decltype(order)> queue(order);

        auto enqueue = [&](Vertex v) {
            if (queued[v]) {
                queue.erase({key[v], v});
                queued[v] = 0;
            }
            auto m = bestMove(g, part, v, pw, counts, cap, conn);
            if (m.to < 0) return;
            key[v] = m.gain;
            queued[v] = 1;
            queue.insert({m.gain, v});
        };
        for (Vertex v = 0; v < n; ++v) enqueue(v);

        std::vector<std::pair<Vertex, int>> moves;  // (vertex, previous partition)
        long total = 0;
        long best = 0;
        std::size_t bestLen = 0;
        const std::size_t patience = std::max<std::size_t>(50, n / 50);
        while (!queue.empty()) {
            auto v = queue.begin()->second;
            queue.erase(queue.begin());
            queued[v] = 0;
            auto m = bestMove(g, part, v, pw, counts, cap, conn);
            if (m.to < 0) continue;
            moves.push_back({v, part[v]});
            applyMove(g, part, v, m.to, pw, counts);
            locked[v] = 1;
            total += m.gain;
            if (total > best) {
                best = total;
                bestLen = moves.size();
            } else if (moves.size() - bestLen > patience) {
                break;
            }
            for (auto e = g.xadj[v]; e < g.xadj[v + 1]; ++e)
                if (!locked[g.adj[e]]) enqueue(g.adj[e]);
        }
        while (moves.size() > bestLen) {
            auto [v, from] = moves.back();
            moves.pop_back();
            applyMove(g, part, v, from, pw, counts);
        }
        if (best <= 0) break;
    }
}

void fillEmpty(const Graph& g, std::vector<int>& part, int k) {
    auto counts = partCounts(part, k);
    Connectivity conn(k);
    for (int p = 0; p < k; ++p) {
        if (counts[static_cast<std::size_t>(p)] > 0) continue;
        auto donor = static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
        if (counts[static_cast<std::size_t>(donor)] < 2) return;
        Vertex pick = 0;
        long pickLoss = std::numeric_limits<long>::max();
        for (Vertex v = 0; v < g.size(); ++v) {
            if (part[v] != donor) continue;
            conn.gather(g, part, v);
            if (conn[donor] < pickLoss) {
                pickLoss = conn[donor];
                pick = v;
            }
        }
        part[pick] = p;
        --counts[static_cast<std::size_t>(donor)];
        ++counts[static_cast<std::size_t>(p)];
    }
}

long overweight(const std::vector<long>& pw, long cap) {
    long over = 0;
    for (auto w : pw) over += std::max(0L, w - cap);
    return over;
}

}  // namespace

std::size_t balanceCap(std::size_t n, int k, double epsilon) {
    const auto kk = static_cast<std::size_t>(k);
    const auto even = (n + kk - 1) / kk;
    const auto loose = static_cast<std::size_t>(std::floor((1.0 + epsilon) * static_cast<double>(n) / k));
    return std::max(even, loose);
}

std::vector<int> partitionGraph(const Adjacency& adj, int k, const PartitionOptions& options) {
    const auto n = adj.size();
    if (k < 2) throw UsageError("the number of partitions must be at least 2");
    if (static_cast<std::size_t>(k) > n)
        throw UsageError("cannot split " + std::to_string(n) + " code entities into " + std::to_string(k) +
                         " partitions");
    Rng rng(options.seed);
    const auto cap = static_cast<long>(balanceCap(n, k, options.epsilon));

    std::vector<Graph> levels{fromAdjacency(adj)};
    std::vector<std::vector<Vertex>> maps;
    const auto coarsenTo = std::max<std::size_t>(30 * static_cast<std::size_t>(k), 200);
    const auto maxVwgt = std::max<long>(1, static_cast<long>(std::ceil(1.5 * static_cast<double>(n) / coarsenTo)));
    while (levels.back().size() > coarsenTo) {
        std::vector<Vertex> cmap;
        auto coarse = coarsen(levels.back(), rng, maxVwgt, cmap);
        if (static_cast<double>(coarse.size()) > 0.95 * static_cast<double>(levels.back().size())) break;
        levels.push_back(std::move(coarse));
        maps.push_back(std::move(cmap));
    }

    const auto& coarsest = levels.back();
    std::vector<int> part;
    std::pair<long, long> bestCost{std::numeric_limits<long>::max(), 0};
    for (int t = 0; t < std::max(1, options.initialTries); ++t) {
        auto candidate = growPartitions(coarsest, k, cap, rng);
        std::pair<long, long> cost{overweight(partWeights(coarsest, candidate, k), cap),
                                   weightedCut(coarsest, candidate)};
        if (cost < bestCost) {
            bestCost = cost;
            part = std::move(candidate);
        }
    }

    for (auto level = levels.size(); level-- > 0;) {
        if (level + 1 < levels.size()) {
            const auto& cmap = maps[level];
            std::vector<int> fine(levels[level].size());
            for (Vertex v = 0; v < fine.size(); ++v) fine[v] = part[cmap[v]];
            part = std::move(fine);
        }
        rebalance(levels[level], part, k, cap);
        if (options.refine) refineFm(levels[level], part, k, cap);
    }
    fillEmpty(levels.front(), part, k);
    return part;
}

std::size_t cutSize(const Adjacency& adj, const std::vector<int>& part) {
    std::size_t cut = 0;
    for (Vertex u = 0; u < adj.size(); ++u)
        for (auto v : adj[u])
            if (u < v && part[u] != part[v]) ++cut;
    return cut;
}

double partitionVariance(const std::vector<double>& sizes) {
    if (sizes.empty()) return 0.0;
    double mean = 0.0;
    for (auto s : sizes) mean += s;
    mean /= static_cast<double>(sizes.size());
    if (mean == 0.0) return 0.0;
    double var = 0.0;
    for (auto s : sizes) var += (s - mean) * (s - mean);
    var /= static_cast<double>(sizes.size());
    return var / (mean * mean);
}

QualityScores scorePartition(const Adjacency& adj, const std::vector<int>& part, int k, const UnitLabels& units) {
    QualityScores q;
    const auto n = adj.size();
    for (Vertex u = 0; u < n; ++u)
        for (auto v : adj[u])
            if (u < v) ++(part[u] == part[v] ? q.internalEdges : q.cutEdges);
    q.modularityRatio = q.cutEdges == 0 ? std::numeric_limits<double>::infinity()
                                        : static_cast<double>(q.internalEdges) / static_cast<double>(q.cutEdges);

    // transitivity of each partition-induced subgraph
    std::vector<double> closed(static_cast<std::size_t>(k), 0.0);
    std::vector<double> wedges(static_cast<std::size_t>(k), 0.0);
    std::vector<Vertex> inside;
    for (Vertex v = 0; v < n; ++v) {
        inside.clear();
        for (auto u : adj[v])
            if (part[u] == part[v]) inside.push_back(u);
        const auto p = static_cast<std::size_t>(part[v]);
        const double d = static_cast<double>(inside.size());
        wedges[p] += d * (d - 1) / 2;
        for (std::size_t i = 0; i < inside.size(); ++i)
            for (std::size_t j = i + 1; j < inside.size(); ++j)
                if (std::binary_search(adj[inside[i]].begin(), adj[inside[i]].end(), inside[j])) closed[p] += 1;
    }
    double accSum = 0.0;
    for (std::size_t p = 0; p < closed.size(); ++p) accSum += wedges[p] > 0 ? closed[p] / wedges[p] : 0.0;
    q.avgClusteringCoefficient = k > 0 ? accSum / k : 0.0;

    auto accuracy = [&](const std::vector<std::string>& label, double& weighted, double& average) {
        std::map<std::string, std::map<int, std::size_t>> byUnit;
        for (Vertex v = 0; v < n; ++v)
            if (units.counted[v]) ++byUnit[label[v]][part[v]];
        std::size_t modal = 0;
        std::size_t total = 0;
        double sum = 0.0;
        for (const auto& [unit, counts] : byUnit) {
            std::size_t unitTotal = 0;
            std::size_t unitModal = 0;
            for (const auto& [p, c] : counts) {
                unitTotal += c;
                unitModal = std::max(unitModal, c);
            }
            modal += unitModal;
            total += unitTotal;
            sum += static_cast<double>(unitModal) / static_cast<double>(unitTotal);
        }
        weighted = total ? 100.0 * static_cast<double>(modal) / static_cast<double>(total) : 0.0;
        average = byUnit.empty() ? 0.0 : 100.0 * sum / static_cast<double>(byUnit.size());
    };
    accuracy(units.file, q.fileWeightedAccuracy, q.fileAverageAccuracy);
    accuracy(units.package, q.packageWeightedAccuracy, q.packageAverageAccuracy);

    q.sizes.assign(static_cast<std::size_t>(k), 0);
    for (auto p : part) ++q.sizes[static_cast<std::size_t>(p)];
    std::vector<double> sizes(q.sizes.begin(), q.sizes.end());
    q.partitionVariance = partitionVariance(sizes);
    for (auto s : sizes) q.distributionPercent.push_back(n ? 100.0 * s / static_cast<double>(n) : 0.0);
    return q;
}

namespace {

struct PreparedGraph {
    IndexedGraph indexed;
    Adjacency adj;
    UnitLabels units;
};

PreparedGraph prepare(const SemanticCodeGraph& graph) {
    PreparedGraph pg;
    pg.indexed = indexGraph(graph, isCodeEntity);
    pg.adj = pg.indexed.graph.undirectedAdjacency();
    for (const auto* node : pg.indexed.nodes) {
        pg.units.file.push_back(node->fileUri);
        pg.units.package.push_back(node->packageName);
        pg.units.counted.push_back(node->isStub() ? 0 : 1);
    }
    return pg;
}

PartitionResult runOne(const PreparedGraph& pg, int k, std::string_view algorithm, PartitionOptions options) {
    if (algorithm == kAlgorithmFm)
        options.refine = true;
    else if (algorithm == kAlgorithmGreedy)
        options.refine = false;
    else
        throw UsageError("unknown partitioning algorithm '" + std::string(algorithm) + "'");
    PartitionResult r;
    r.algorithm = std::string(algorithm);
    r.k = k;
    r.ids = pg.indexed.ids;
    r.assignment = partitionGraph(pg.adj, k, options);
    r.quality = scorePartition(pg.adj, r.assignment, k, pg.units);
    return r;
}

}  // namespace

PartitionResult partition(const SemanticCodeGraph& graph, int k, std::string_view algorithm,
                          PartitionOptions options) {
    return runOne(prepare(graph), k, algorithm, options);
}

std::vector<PartitionResult> partitionSweep(const SemanticCodeGraph& graph, int maxK, PartitionOptions options) {
    if (maxK < 2) throw UsageError("the number of partitions must be at least 2");
    const auto pg = prepare(graph);
    if (static_cast<std::size_t>(maxK) > pg.adj.size())
        throw UsageError("cannot split " + std::to_string(pg.adj.size()) + " code entities into " +
                         std::to_string(maxK) + " partitions");
    std::vector<std::future<std::vector<PartitionResult>>> jobs;
    for (int k = 2; k <= maxK; ++k) {
        jobs.push_back(std::async(std::launch::async, [&pg, k, options] {
            std::vector<PartitionResult> row;
            for (auto algorithm : kAlgorithms) row.push_back(runOne(pg, k, algorithm, options));
            return row;
        }));
    }
    std::vector<PartitionResult> out;
    for (auto& job : jobs)
        for (auto& r : job.get()) out.push_back(std::move(r));
    return out;
}

}  // namespace scg
