// SPDX-License-Identifier: Apache-2.0
//
// Dense GF(2) matrices, 1-based index sets, and the binary-domination
// order that underlies the structure of polar generator matrices.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace polarpilot {

/// Ordered set of 1-based positions inside {1..universe_size}.
/// Members are stored strictly ascending; duplicates are rejected.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(int universe_size, std::vector<int> members);

    static IndexSet full(int universe_size);
    static IndexSet empty(int universe_size);

    int universe_size() const { return universe_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool is_empty() const { return members_.empty(); }

    /// 1-based membership test, O(1).
    bool contains(int index) const;

    /// i-th smallest member (0-based rank), returned 1-based.
    int operator[](int rank) const { return members_[static_cast<size_t>(rank)]; }

    const std::vector<int>& members() const { return members_; }

    IndexSet complement() const;
    IndexSet set_union(const IndexSet& other) const;
    IndexSet intersect(const IndexSet& other) const;
    IndexSet difference(const IndexSet& other) const;
    bool is_subset_of(const IndexSet& other) const;

    bool operator==(const IndexSet& other) const {
        return universe_ == other.universe_ && members_ == other.members_;
    }

private:
    int universe_ = 0;
    std::vector<int> members_;
    std::vector<uint8_t> mask_;  // membership bitmap, index 1..universe_
};

/// Dense binary matrix, one packed run of 64-bit words per row.
/// Entries are addressed 0-based; bits past `cols` are kept zero so that
/// whole-word comparisons stay valid.
class BitMatrix {
public:
    BitMatrix(int rows, int cols);

    static BitMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int get(int r, int c) const;
    void set(int r, int c, int value);

    std::span<const uint64_t> row_words(int r) const;
    std::span<uint64_t> row_words(int r);

    /// rows()[dst] ^= src.rows()[src_row]; both rows must have equal width.
    void xor_row(int dst, const BitMatrix& src, int src_row);

    bool operator==(const BitMatrix& other) const;

    /// Rows of '0'/'1' characters, one row per line. Debug aid.
    std::string to_string() const;

private:
    void check_cell(int r, int c) const;

    int rows_ = 0;
    int cols_ = 0;
    int words_per_row_ = 0;
    std::vector<uint64_t> words_;
};

inline constexpr int kMaxGeneratorOrder = 16;

/// F^(x)n with F = [[1,0],[1,1]], built by repeated Kronecker products.
/// Lower triangular with unit diagonal, size 2^n.
BitMatrix kron_power(int n, int max_order = kMaxGeneratorOrder);

/// True iff every bit of the binary expansion of (i-1) is >= the matching
/// bit of (j-1). Indices are 1-based in [1, 2^n].
bool dominates(int i, int j, int n);

/// Entry (a,b) = g(row_set[a], col_set[b]), sets taken in ascending order.
BitMatrix submatrix(const BitMatrix& g, const IndexSet& row_set, const IndexSet& col_set);

BitMatrix gf2_multiply(const BitMatrix& a, const BitMatrix& b);

/// M * M == I over GF(2). Throws if M is not square.
bool is_involution(const BitMatrix& m);

/// Inverse of a lower-triangular matrix with unit diagonal.
BitMatrix gf2_invert_lower_triangular(const BitMatrix& m);

/// Direct triple-quantifier check: for all h,j in the set and i in {1..2^n},
/// (h-1) >= (i-1) >= (j-1) under domination implies i is a member.
bool is_domination_contiguous(const IndexSet& set, int n);

bool is_zero(const BitMatrix& m);

/// K x N selector with row i carrying a single one at column set[i]-1.
BitMatrix selection_matrix(const IndexSet& set);

/// Permutation p with p[i] = bit-reversal of i in n bits (0-based).
/// Provided for completeness; the generator here is used unpermuted.
std::vector<int> bit_reversal_permutation(int n);

}  // namespace polarpilot
