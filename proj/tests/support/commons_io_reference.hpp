#pragma once

// Reference results reported for commons-io: the top-3 list of every base
// metric, and the size distribution (percent) and variance of 18 partitionings.

#include <string>
#include <utility>
#include <vector>

#include "scg/crucial.hpp"

namespace reference {

inline const std::string kPrefix = "org.apache.commons.io.";

inline std::vector<scg::MetricRanking> commonsIoTop3() {
    using scg::Metric;
    const std::vector<std::pair<Metric, std::vector<std::pair<std::string, double>>>> table = {
        {Metric::Loc, {{"IOUtils", 3608}, {"FileUtils", 3434}, {"file.PathUtils", 1682}}},
        {Metric::OutDegree, {{"FileUtils", 176}, {"IOUtils", 171}, {"file.PathUtils", 106}}},
        {Metric::InDegree,
         {{"filefilter.IOFileFilter", 131}, {"CloseableURLConnection?urlConnection", 47},
          {"function.IOBaseStream.unwrap()", 46}}},
        {Metric::PageRank,
         {{"filefilter.IOFileFilter", 0.013}, {"output.NullPrintStream", 0.011},
          {"output.NullPrintStream.NullPrintStream()", 0.006}}},
        {Metric::Eigenvector,
         {{"function.IOBaseStream.unwrap()", 0.307}, {"input.Tailer", 0.272}, {"function.IOStream.T", 0.201}}},
        {Metric::Katz,
         {{"filefilter.IOFileFilter", 2.340}, {"CloseableURLConnection?urlConnection", 1.476},
          {"function.IOBaseStream.unwrap()", 1.467}}},
        {Metric::Betweenness,
         {{"function.IOStreams.forAll()", 301648.755}, {"function.IOConsumer", 299069.829},
          {"function.IOStream.adapt()", 272351.667}}},
        {Metric::Harmonic, {{"FileUtils", 0.092}, {"IOUtils", 0.070}, {"FileUtils.FileUtils()", 0.064}}},
    };
    std::vector<scg::MetricRanking> out;
    for (const auto& [metric, rows] : table) {
        scg::MetricRanking r{metric, {}};
        for (const auto& [id, score] : rows) r.entries.push_back({kPrefix + id, score});
        out.push_back(r);
    }
    return out;
}

struct PartitionRow {
    const char* algorithm;
    int k;
    double variance;
    std::vector<double> distribution;
};

inline const std::vector<PartitionRow>& commonsIoPartitions() {
    static const std::vector<PartitionRow> rows = {
        {"gpmetis", 2, 0.844, {4, 95}},
        {"patoh", 2, 0.024, {42, 57}},
        {"gpmetis", 3, 0.450, {15, 19, 64}},
        {"patoh", 3, 0.026, {25, 37, 37}},
        {"gpmetis", 4, 0.372, {11, 26, 12, 49}},
        {"patoh", 4, 0.047, {20, 21, 23, 34}},
        {"gpmetis", 5, 0.547, {4, 9, 10, 38, 37}},
        {"patoh", 5, 0.059, {16, 16, 15, 21, 28}},
        {"gpmetis", 6, 0.412, {1, 28, 22, 2, 22, 23}},
        {"patoh", 6, 0.044, {12, 14, 18, 13, 18, 22}},
        {"gpmetis", 7, 0.186, {5, 10, 26, 12, 10, 15, 18}},
        {"patoh", 7, 0.038, {10, 15, 11, 14, 12, 15, 19}},
        {"gpmetis", 8, 0.038, {12, 10, 10, 14, 11, 12, 9, 17}},
        {"patoh", 8, 0.027, {9, 11, 10, 13, 13, 15, 11, 14}},
        {"gpmetis", 9, 0.224, {7, 20, 11, 5, 8, 7, 6, 19, 13}},
        {"patoh", 9, 0.022, {10, 10, 10, 10, 11, 9, 10, 15, 12}},
        {"gpmetis", 10, 0.142, {11, 4, 3, 7, 16, 11, 9, 12, 11, 11}},
        {"patoh", 10, 0.021, {9, 9, 7, 9, 11, 9, 11, 8, 12, 10}},
    };
    return rows;
}

}  // namespace reference
