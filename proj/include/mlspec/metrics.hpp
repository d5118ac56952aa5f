#pragma once

#include <vector>

#include "mlspec/kmeans.hpp"

namespace mlspec {

struct GroundTruth {
    std::vector<int> labels;
    int num_classes = 0;
};

struct MetricReport {
    double purity = 0.0;
    double nmi = 0.0;
    double rand_index = 0.0;
};

// All metrics are invariant under permutations of either side's label ids.
// Core overloads take raw label vectors (used when comparing two clusterings,
// e.g. to order layers by mutual information); typed wrappers below.

// (1/N) sum over predicted clusters of the largest intersection with any class.
double purity(const std::vector<int>& pred, const std::vector<int>& truth);

// Mutual information normalized by the mean of the two entropies, natural log
// internally (the base cancels). Conventions: 0·log 0 = 0; both entropies
// zero -> 1.0; exactly one entropy zero -> 0.0.
double nmi(const std::vector<int>& pred, const std::vector<int>& truth);

// Fraction of unordered vertex pairs on which the two labelings agree about
// co-membership: (TP + TN) / (n(n-1)/2). Requires n >= 2.
double rand_index(const std::vector<int>& pred, const std::vector<int>& truth);

double purity(const Clustering& c, const GroundTruth& t);
double nmi(const Clustering& c, const GroundTruth& t);
double rand_index(const Clustering& c, const GroundTruth& t);
MetricReport evaluate(const Clustering& c, const GroundTruth& t);

// Square count matrix, row = class, column = predicted cluster (padded with
// zero rows/columns if the label ranges differ). With matched = true the
// columns are permuted by a maximum-weight assignment (Hungarian algorithm)
// so that the diagonal sum is maximal.
std::vector<std::vector<long>> confusion_matrix(const Clustering& c, const GroundTruth& t,
                                                bool matched);

// Maximum-weight column assignment for a square non-negative matrix; returns
// perm with perm[column_slot] = original column placed there. Exposed for
// testing against brute force.
std::vector<int> max_assignment(const std::vector<std::vector<long>>& m);

}  // namespace mlspec
