// SPDX-License-Identifier: Apache-2.0

#include "polarpilot/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace polarpilot {

IndexSet::IndexSet(int universe_size, std::vector<int> members)
    : universe_(universe_size), members_(std::move(members)) {
    if (universe_ < 0) throw std::invalid_argument("IndexSet: negative universe");
    std::sort(members_.begin(), members_.end());
    mask_.assign(static_cast<size_t>(universe_) + 1, 0);
    int prev = 0;
    for (int m : members_) {
        if (m < 1 || m > universe_) throw std::out_of_range("IndexSet: member outside universe");
        if (m == prev) throw std::invalid_argument("IndexSet: duplicate member");
        mask_[static_cast<size_t>(m)] = 1;
        prev = m;
    }
}

IndexSet IndexSet::full(int universe_size) {
    std::vector<int> all(static_cast<size_t>(universe_size));
    for (int i = 0; i < universe_size; ++i) all[static_cast<size_t>(i)] = i + 1;
    return IndexSet(universe_size, std::move(all));
}

IndexSet IndexSet::empty(int universe_size) { return IndexSet(universe_size, {}); }

bool IndexSet::contains(int index) const {
    if (index < 1 || index > universe_) return false;
    return mask_[static_cast<size_t>(index)] != 0;
}

IndexSet IndexSet::complement() const {
    std::vector<int> rest;
    rest.reserve(static_cast<size_t>(universe_ - size()));
    for (int i = 1; i <= universe_; ++i)
        if (!contains(i)) rest.push_back(i);
    return IndexSet(universe_, std::move(rest));
}

IndexSet IndexSet::set_union(const IndexSet& other) const {
    std::vector<int> out;
    for (int i = 1; i <= universe_; ++i)
        if (contains(i) || other.contains(i)) out.push_back(i);
    return IndexSet(universe_, std::move(out));
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
    std::vector<int> out;
    for (int m : members_)
        if (other.contains(m)) out.push_back(m);
    return IndexSet(universe_, std::move(out));
}

IndexSet IndexSet::difference(const IndexSet& other) const {
    std::vector<int> out;
    for (int m : members_)
        if (!other.contains(m)) out.push_back(m);
    return IndexSet(universe_, std::move(out));
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
    for (int m : members_)
        if (!other.contains(m)) return false;
    return true;
}

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("BitMatrix: dimensions must be positive");
    words_per_row_ = (cols + 63) / 64;
    words_.assign(static_cast<size_t>(rows) * static_cast<size_t>(words_per_row_), 0);
}

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void BitMatrix::check_cell(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("BitMatrix: index out of range");
}

int BitMatrix::get(int r, int c) const {
    check_cell(r, c);
    const uint64_t word = words_[static_cast<size_t>(r) * words_per_row_ + static_cast<size_t>(c >> 6)];
    return static_cast<int>((word >> (c & 63)) & 1u);
}

void BitMatrix::set(int r, int c, int value) {
    check_cell(r, c);
    uint64_t& word = words_[static_cast<size_t>(r) * words_per_row_ + static_cast<size_t>(c >> 6)];
    const uint64_t bit = uint64_t{1} << (c & 63);
    if (value)
        word |= bit;
    else
        word &= ~bit;
}

std::span<const uint64_t> BitMatrix::row_words(int r) const {
    return {words_.data() + static_cast<size_t>(r) * words_per_row_, static_cast<size_t>(words_per_row_)};
}

std::span<uint64_t> BitMatrix::row_words(int r) {
    return {words_.data() + static_cast<size_t>(r) * words_per_row_, static_cast<size_t>(words_per_row_)};
}

void BitMatrix::xor_row(int dst, const BitMatrix& src, int src_row) {
    if (cols_ != src.cols_) throw std::invalid_argument("BitMatrix: row width mismatch");
    auto d = row_words(dst);
    auto s = src.row_words(src_row);
    for (size_t w = 0; w < d.size(); ++w) d[w] ^= s[w];
}

bool BitMatrix::operator==(const BitMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && words_ == other.words_;
}

std::string BitMatrix::to_string() const {
    std::string out;
    out.reserve(static_cast<size_t>(rows_) * static_cast<size_t>(cols_ + 1));
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) out.push_back(get(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

BitMatrix kron_power(int n, int max_order) {
    if (n < 1 || n > max_order) throw std::invalid_argument("kron_power: order out of range");
    BitMatrix g(2, 2);
    g.set(0, 0, 1);
    g.set(1, 0, 1);
    g.set(1, 1, 1);
    for (int level = 2; level <= n; ++level) {
        const int half = g.rows();
        BitMatrix next(2 * half, 2 * half);
        for (int r = 0; r < half; ++r) {
            for (int c = 0; c < half; ++c) {
                if (!g.get(r, c)) continue;
                next.set(r, c, 1);              // top-left block: G
                next.set(r + half, c, 1);       // bottom-left block: G
                next.set(r + half, c + half, 1);  // bottom-right block: G
            }
        }
        g = std::move(next);
    }
    return g;
}

bool dominates(int i, int j, int n) {
    if (n < 1 || n > kMaxGeneratorOrder) throw std::invalid_argument("dominates: order out of range");
    const int block = 1 << n;
    if (i < 1 || i > block || j < 1 || j > block)
        throw std::out_of_range("dominates: index outside block");
    const unsigned a = static_cast<unsigned>(i - 1);
    const unsigned b = static_cast<unsigned>(j - 1);
    return (a & b) == b;
}

BitMatrix submatrix(const BitMatrix& g, const IndexSet& row_set, const IndexSet& col_set) {
    if (row_set.is_empty() || col_set.is_empty())
        throw std::invalid_argument("submatrix: empty selection");
    for (int r : row_set.members())
        if (r > g.rows()) throw std::out_of_range("submatrix: row index outside matrix");
    for (int c : col_set.members())
        if (c > g.cols()) throw std::out_of_range("submatrix: column index outside matrix");

    BitMatrix out(row_set.size(), col_set.size());
    for (int a = 0; a < row_set.size(); ++a)
        for (int b = 0; b < col_set.size(); ++b)
            out.set(a, b, g.get(row_set[a] - 1, col_set[b] - 1));
    return out;
}

BitMatrix gf2_multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("gf2_multiply: inner dimensions differ");
    BitMatrix out(a.rows(), b.cols());
    for (int r = 0; r < a.rows(); ++r) {
        auto row = a.row_words(r);
        for (size_t w = 0; w < row.size(); ++w) {
            uint64_t bits = row[w];
            while (bits) {
                const int k = static_cast<int>(w) * 64 + __builtin_ctzll(bits);
                out.xor_row(r, b, k);
                bits &= bits - 1;
            }
        }
    }
    return out;
}

bool is_involution(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("is_involution: matrix not square");
    return gf2_multiply(m, m) == BitMatrix::identity(m.rows());
}

BitMatrix gf2_invert_lower_triangular(const BitMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("gf2_invert_lower_triangular: matrix not square");
    const int n = m.rows();
    for (int r = 0; r < n; ++r) {
        if (!m.get(r, r))
            throw std::invalid_argument("gf2_invert_lower_triangular: zero on diagonal");
        for (int c = r + 1; c < n; ++c)
            if (m.get(r, c))
                throw std::invalid_argument("gf2_invert_lower_triangular: matrix not lower triangular");
    }
    BitMatrix work = m;
    BitMatrix inv = BitMatrix::identity(n);
    for (int c = 0; c < n; ++c) {
        for (int r = c + 1; r < n; ++r) {
            if (work.get(r, c)) {
                work.xor_row(r, work, c);
                inv.xor_row(r, inv, c);
            }
        }
    }
    return inv;
}

bool is_domination_contiguous(const IndexSet& set, int n) {
    if (n < 1 || n > kMaxGeneratorOrder)
        throw std::invalid_argument("is_domination_contiguous: order out of range");
    const int block = 1 << n;
    for (int m : set.members())
        if (m > block) throw std::out_of_range("is_domination_contiguous: member outside block");

    const auto& members = set.members();
    for (int h : members) {
        const unsigned hb = static_cast<unsigned>(h - 1);
        for (int j : members) {
            const unsigned jb = static_cast<unsigned>(j - 1);
            if ((hb & jb) != jb) continue;  // h does not dominate j
            for (int i = j; i <= h; ++i) {
                const unsigned ib = static_cast<unsigned>(i - 1);
                if ((hb & ib) == ib && (ib & jb) == jb && !set.contains(i)) return false;
            }
        }
    }
    return true;
}

bool is_zero(const BitMatrix& m) {
    for (int r = 0; r < m.rows(); ++r)
        for (uint64_t w : m.row_words(r))
            if (w) return false;
    return true;
}

BitMatrix selection_matrix(const IndexSet& set) {
    if (set.is_empty()) throw std::invalid_argument("selection_matrix: empty set");
    BitMatrix e(set.size(), set.universe_size());
    for (int i = 0; i < set.size(); ++i) e.set(i, set[i] - 1, 1);
    return e;
}

std::vector<int> bit_reversal_permutation(int n) {
    if (n < 1 || n > kMaxGeneratorOrder)
        throw std::invalid_argument("bit_reversal_permutation: order out of range");
    const int block = 1 << n;
    std::vector<int> perm(static_cast<size_t>(block));
    for (int i = 0; i < block; ++i) {
        int rev = 0;
        for (int t = 0; t < n; ++t)
            if (i & (1 << t)) rev |= 1 << (n - 1 - t);
        perm[static_cast<size_t>(i)] = rev;
    }
    return perm;
}

}  // namespace polarpilot
