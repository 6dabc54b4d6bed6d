#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qlwb {

using Int = mpz_class;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols = 0);
    static IntMatrix diagonal(const std::vector<long>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const;

    IntMatrix transpose() const;
    bool is_zero() const;
    std::string str() const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row_i += k * row_j
    void add_row(std::size_t i, std::size_t j, const Int& k);
    // col_i += k * col_j
    void add_col(std::size_t i, std::size_t j, const Int& k);
    void negate_row(std::size_t i);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

Int determinant(const IntMatrix& m);

struct SmithForm {
    IntMatrix D;
    IntMatrix U;
    IntMatrix V;
};

// U * M * V = D with U, V unimodular and diag(D) a divisibility chain.
SmithForm smith_normal_form(const IntMatrix& m);

class FgAbGroup {
public:
    FgAbGroup() = default;
    // Cyclic orders in any order; 0 stands for a copy of Z and 1 is dropped.
    FgAbGroup(int free_rank, std::vector<Int> cyclic);
    explicit FgAbGroup(int free_rank) : free_rank_(free_rank) {}

    static FgAbGroup free(int r) { return FgAbGroup(r); }
    static FgAbGroup cyclic(const Int& d) { return FgAbGroup(0, {d}); }
    static FgAbGroup parse(std::string_view text);

    int rank() const { return free_rank_; }
    const std::vector<Int>& divisors() const { return divisors_; }
    int num_generators() const { return free_rank_ + static_cast<int>(divisors_.size()); }
    // order of generator i (0 for free generators)
    Int generator_order(int i) const;

    Int torsion_order() const;
    bool is_zero() const { return free_rank_ == 0 && divisors_.empty(); }
    bool is_torsion_free() const { return divisors_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }
    FgAbGroup torsion() const;
    FgAbGroup free_part() const { return FgAbGroup(free_rank_); }

    std::string str() const;

    bool operator==(const FgAbGroup& o) const = default;

private:
    int free_rank_ = 0;
    std::vector<Int> divisors_;
};

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup operator+(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup power(const FgAbGroup& a, int k);

inline int rank(const FgAbGroup& g) { return g.rank(); }
inline Int torsion_order(const FgAbGroup& g) { return g.torsion_order(); }
inline bool is_zero(const FgAbGroup& g) { return g.is_zero(); }
inline bool is_torsion_free(const FgAbGroup& g) { return g.is_torsion_free(); }

// Z^rows / image(M)
FgAbGroup cokernel(const IntMatrix& m);

FgAbGroup tensor_zmod(const FgAbGroup& g, long m);
FgAbGroup m_torsion(const FgAbGroup& g, long m);

// C with whole = summand + C; throws if summand is not a direct summand.
FgAbGroup complement(const FgAbGroup& whole, const FgAbGroup& summand);

// Smallest m >= 2 with G/m or G[m] nonzero, 0 if G = 0.
long smallest_detecting_modulus(const FgAbGroup& g);

// Homomorphisms between canonical groups. Generators are ordered free first,
// then torsion generators in divisor order; f has one column per source
// generator and one row per target generator.
bool hom_well_defined(const FgAbGroup& src, const FgAbGroup& dst, const IntMatrix& f);
FgAbGroup hom_kernel(const FgAbGroup& src, const FgAbGroup& dst, const IntMatrix& f);
FgAbGroup hom_cokernel(const FgAbGroup& src, const FgAbGroup& dst, const IntMatrix& f);

class GradedAb {
public:
    GradedAb() = default;
    explicit GradedAb(std::vector<FgAbGroup> groups) : groups_(std::move(groups)) {}

    // zero outside the stored range
    const FgAbGroup& at(int i) const;
    void set(int i, FgAbGroup g);
    int top() const { return static_cast<int>(groups_.size()) - 1; }
    const std::vector<FgAbGroup>& groups() const { return groups_; }

    int betti(int i) const { return at(i).rank(); }
    long euler_characteristic() const;
    std::string str() const;

    bool operator==(const GradedAb& o) const;

private:
    std::vector<FgAbGroup> groups_;
};

}  // namespace qlwb
