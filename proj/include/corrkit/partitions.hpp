#pragma once

#include "corrkit/state.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace corrkit {

std::uint64_t stirling2(int N, int k);
std::uint64_t binomial(int n, int k);

// Canonical form: each block ascending; blocks ordered by (size, then
// lexicographic). Partitions of a mode set are listed by ascending block-size
// signature, then lexicographically on the block sequence.
struct PartitionSpec {
    std::vector<std::vector<int>> blocks;

    PartitionSpec() = default;
    explicit PartitionSpec(std::vector<std::vector<int>> b);  // canonicalizes, checks disjointness

    int T() const { return static_cast<int>(blocks.size()); }
    std::vector<int> modes() const;  // ascending union
    std::vector<int> size_signature() const;
    std::string str() const;         // "(1|2,3)"
    bool operator==(const PartitionSpec& o) const { return blocks == o.blocks; }
    bool operator<(const PartitionSpec& o) const;
};

std::vector<PartitionSpec> enumerate_partitions(const std::vector<int>& modes, int k);
ModeStructure grouped_structure(const ModeStructure& s, const PartitionSpec& p);

// reduction to p.modes(), regrouped so each block is one mode
DensityMatrix grouped_reduction(const DensityMatrix& rho, const PartitionSpec& p);
double partitional_correlance(const DensityMatrix& rho, const PartitionSpec& p);
double root_correlance(const DensityMatrix& rho, const PartitionSpec& p);

struct MultiValue {
    double raw = 0;
    double normalized = 0;
};

// default denominators: Stirling2(N,k), N-1 and the scalar count
MultiValue k_partitional_multicorrelance(const DensityMatrix& rho, int k, std::optional<double> denom = {});
MultiValue multicorrelance(const DensityMatrix& rho, std::optional<double> denom = {});

// row T-2 holds the T-partitional root-correlances of the reduction to `modes`
std::vector<std::vector<double>> partitional_vector(const DensityMatrix& rho, const std::vector<int>& modes);

struct MultiGroup {
    std::vector<int> modes;
    std::vector<std::vector<double>> rows;
};

struct MulticorrelanceArray {
    std::vector<MultiGroup> groups;  // group size 2..N, combinations in lexicographic order
    std::size_t scalar_count() const;
    double one_norm() const;
};

MulticorrelanceArray multicorrelance_array(const DensityMatrix& rho);
MultiValue absolute_multicorrelance(const DensityMatrix& rho, std::optional<double> denom = {});
MultiValue absolute_multicorrelance(const MulticorrelanceArray& arr, std::optional<double> denom = {});

std::vector<std::vector<int>> combinations(const std::vector<int>& items, int k);

}  // namespace corrkit
