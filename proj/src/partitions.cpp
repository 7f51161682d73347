#include "corrkit/partitions.hpp"
#include "corrkit/measures.hpp"

#include <algorithm>
#include <cmath>

namespace corrkit {

std::uint64_t stirling2(int N, int k) {
    if (N < 0 || k < 0 || k > N || (N > 0 && k == 0))
        throw Error("out_of_range", "stirling2 needs 1 <= k <= N");
    // S(n,k) = k S(n-1,k) + S(n-1,k-1)
    std::vector<std::uint64_t> row(k + 1, 0);
    row[0] = 1;
    for (int n = 1; n <= N; ++n) {
        for (int j = std::min(n, k); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

bool block_less(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace

PartitionSpec::PartitionSpec(std::vector<std::vector<int>> b) : blocks(std::move(b)) {
    std::vector<int> all;
    for (auto& blk : blocks) {
        if (blk.empty()) throw Error("bad_partition", "partition blocks must be nonempty");
        std::sort(blk.begin(), blk.end());
        all.insert(all.end(), blk.begin(), blk.end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw Error("bad_partition", "partition blocks overlap");
    std::sort(blocks.begin(), blocks.end(), block_less);
}

std::vector<int> PartitionSpec::modes() const {
    std::vector<int> all;
    for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<int> PartitionSpec::size_signature() const {
    std::vector<int> s;
    for (const auto& b : blocks) s.push_back(static_cast<int>(b.size()));
    return s;  // already ascending by construction
}

std::string PartitionSpec::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) s += '|';
        for (std::size_t j = 0; j < blocks[i].size(); ++j) {
            if (j) s += ',';
            s += std::to_string(blocks[i][j]);
        }
    }
    return s + ")";
}

bool PartitionSpec::operator<(const PartitionSpec& o) const {
    auto a = size_signature(), b = o.size_signature();
    if (a != b) return a < b;
    return blocks < o.blocks;
}

std::vector<PartitionSpec> enumerate_partitions(const std::vector<int>& modes, int k) {
    const int n = static_cast<int>(modes.size());
    if (k < 1 || k > n) throw Error("out_of_range", "partition count k must be within 1.." + std::to_string(n));
    std::vector<PartitionSpec> out;
    // restricted growth strings a[0]=0, a[i] <= 1 + max(a[0..i-1])
    std::vector<int> a(n, 0);
    auto emit = [&] {
        std::vector<std::vector<int>> b(k);
        for (int i = 0; i < n; ++i) b[a[i]].push_back(modes[i]);
        out.emplace_back(std::move(b));
    };
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (n - i < k - used) return;
        if (i == n) {
            if (used == k) emit();
            return;
        }
        for (int v = 0; v <= std::min(used, k - 1); ++v) {
            a[i] = v;
            self(self, i + 1, std::max(used, v + 1));
        }
    };
    if (n > 0) rec(rec, 1, 1);
    std::sort(out.begin(), out.end());
    return out;
}

ModeStructure grouped_structure(const ModeStructure& s, const PartitionSpec& p) {
    std::vector<int> d;
    for (const auto& b : p.blocks) {
        int prod = 1;
        for (int l : b) prod *= s.dim(l);
        d.push_back(prod);
    }
    return ModeStructure(d);
}

DensityMatrix grouped_reduction(const DensityMatrix& rho, const PartitionSpec& p) {
    std::vector<int> order;
    for (const auto& b : p.blocks) order.insert(order.end(), b.begin(), b.end());
    auto red = partial_trace(rho, order);
    return DensityMatrix::unchecked(grouped_structure(rho.structure(), p), red.matrix());
}

double partitional_correlance(const DensityMatrix& rho, const PartitionSpec& p) {
    if (p.T() < 2) throw Error("unsupported_structure", "a single block carries no correlation");
    return correlance(grouped_reduction(rho, p));
}

double root_correlance(const DensityMatrix& rho, const PartitionSpec& p) {
    return std::sqrt(std::max(0.0, partitional_correlance(rho, p)));
}

std::vector<std::vector<int>> combinations(const std::vector<int>& items, int k) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(items.size());
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::vector<int> c;
        for (int i : idx) c.push_back(items[i]);
        out.push_back(std::move(c));
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

namespace {

std::vector<int> all_modes(const DensityMatrix& rho) {
    std::vector<int> m(rho.N());
    for (int i = 0; i < rho.N(); ++i) m[i] = i + 1;
    return m;
}

}  // namespace

MultiValue k_partitional_multicorrelance(const DensityMatrix& rho, int k, std::optional<double> denom) {
    const int N = rho.N();
    if (k < 2 || k > N) throw Error("out_of_range", "k must be within 2..N");
    MultiValue v;
    for (const auto& p : enumerate_partitions(all_modes(rho), k)) v.raw += root_correlance(rho, p);
    v.normalized = v.raw / denom.value_or(static_cast<double>(stirling2(N, k)));
    return v;
}

MultiValue multicorrelance(const DensityMatrix& rho, std::optional<double> denom) {
    const int N = rho.N();
    if (N < 2) throw Error("unsupported_structure", "multicorrelance needs N >= 2");
    MultiValue v;
    for (int k = 2; k <= N; ++k) v.raw += k_partitional_multicorrelance(rho, k).normalized;
    v.normalized = v.raw / denom.value_or(N - 1.0);
    return v;
}

std::vector<std::vector<double>> partitional_vector(const DensityMatrix& rho, const std::vector<int>& modes) {
    if (modes.size() < 2) throw Error("out_of_range", "need at least two modes");
    std::vector<std::vector<double>> rows;
    for (int T = 2; T <= static_cast<int>(modes.size()); ++T) {
        std::vector<double> row;
        for (const auto& p : enumerate_partitions(modes, T)) row.push_back(root_correlance(rho, p));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::size_t MulticorrelanceArray::scalar_count() const {
    std::size_t c = 0;
    for (const auto& g : groups)
        for (const auto& r : g.rows) c += r.size();
    return c;
}

double MulticorrelanceArray::one_norm() const {
    double s = 0;
    for (const auto& g : groups)
        for (const auto& r : g.rows)
            for (double x : r) s += std::abs(x);
    return s;
}

MulticorrelanceArray multicorrelance_array(const DensityMatrix& rho) {
    if (rho.N() < 2) throw Error("unsupported_structure", "multicorrelance array needs N >= 2");
    MulticorrelanceArray arr;
    auto modes = all_modes(rho);
    for (int S = 2; S <= rho.N(); ++S)
        for (auto& c : combinations(modes, S)) arr.groups.push_back({c, partitional_vector(rho, c)});
    return arr;
}

MultiValue absolute_multicorrelance(const MulticorrelanceArray& arr, std::optional<double> denom) {
    MultiValue v;
    v.raw = arr.one_norm();
    v.normalized = v.raw / denom.value_or(static_cast<double>(arr.scalar_count()));
    return v;
}

MultiValue absolute_multicorrelance(const DensityMatrix& rho, std::optional<double> denom) {
    return absolute_multicorrelance(multicorrelance_array(rho), denom);
}

}  // namespace corrkit
