#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qlwb {

using Rational = mpq_class;
// weakly decreasing, no trailing zeros
using Partition = std::vector<int>;

std::string partition_str(const Partition& p);

// horizontal strips of size r added to lambda inside the k x (n-k) box
std::vector<Partition> pieri(const Partition& lambda, int r, int k, int n);

// c[i][j] lists (nu, c_{ij}^nu) over basis indices
using StructureTable = std::vector<std::vector<std::vector<std::pair<int, long>>>>;

class Grassmannian {
public:
    Grassmannian(int k, int n);

    int k() const { return k_; }
    int n() const { return n_; }
    int dim() const { return k_ * (n_ - k_); }
    int size() const { return static_cast<int>(basis_.size()); }
    const Partition& basis(int i) const { return basis_[i]; }
    int degree(int i) const { return degree_[i]; }
    int index(const Partition& p) const;
    int top() const { return top_; }
    Partition complement(const Partition& p) const;
    // number of partitions of size d in the box
    int count_in_degree(int d) const;
    const StructureTable& table() const { return table_; }

private:
    int k_, n_;
    std::vector<Partition> basis_;
    std::vector<int> degree_;
    std::map<Partition, int> index_;
    int top_ = 0;
    StructureTable table_;
};

// Giambelli expanded with Pieri; the parallel variant splits pairs over threads
StructureTable structure_constants(int k, int n, bool parallel = false);

class CohClass {
public:
    CohClass() = default;
    explicit CohClass(const Grassmannian& g) : c_(g.size()) {}
    static CohClass unit(const Grassmannian& g);
    static CohClass schubert(const Grassmannian& g, const Partition& p);

    int size() const { return static_cast<int>(c_.size()); }
    Rational& operator[](int i) { return c_[i]; }
    const Rational& operator[](int i) const { return c_[i]; }
    bool is_zero() const;
    bool is_integral() const;
    bool operator==(const CohClass& o) const { return c_ == o.c_; }

    CohClass& operator+=(const CohClass& o);
    CohClass& operator-=(const CohClass& o);
    CohClass& operator*=(const Rational& r);

    // degree-d part
    CohClass part(const Grassmannian& g, int d) const;
    std::string str(const Grassmannian& g) const;

private:
    std::vector<Rational> c_;
};

CohClass operator+(CohClass a, const CohClass& b);
CohClass operator-(CohClass a, const CohClass& b);
CohClass operator*(const Rational& r, CohClass a);

CohClass multiply(const CohClass& a, const CohClass& b, const Grassmannian& g);
// coefficient of the point class
Rational integrate(const CohClass& a, const Grassmannian& g);
CohClass power(const CohClass& a, int e, const Grassmannian& g);
CohClass exp_class(const CohClass& a, const Grassmannian& g);

struct ChernData {
    long rank = 0;
    CohClass ch;
};

class BundleExpr {
public:
    enum class Op { Sub, Quot, Line, Dual, Sum, Tensor, Lambda, Sym };

    static BundleExpr S();
    static BundleExpr Q();
    static BundleExpr O(int t);
    BundleExpr dual() const;
    BundleExpr lambda(int p) const;
    BundleExpr sym(int p) const;
    friend BundleExpr operator+(const BundleExpr& a, const BundleExpr& b);
    friend BundleExpr operator*(const BundleExpr& a, const BundleExpr& b);

    ChernData eval(const Grassmannian& g) const;
    std::string str() const;

    struct Node;

private:
    std::shared_ptr<const Node> node_;
};

// tangent bundle S^v (x) Q
BundleExpr tangent();
BundleExpr cotangent();

// Adams operation psi^j on a Chern character
CohClass adams(const CohClass& ch, int j, const Grassmannian& g);
ChernData lambda_power(const ChernData& e, int p, const Grassmannian& g);
ChernData sym_power(const ChernData& e, int p, const Grassmannian& g);

// c_0, ..., c_dim
std::vector<CohClass> chern(const BundleExpr& b, const Grassmannian& g);
std::vector<CohClass> chern_from_ch(const CohClass& ch, const Grassmannian& g);
CohClass todd_from_ch(const CohClass& ch, const Grassmannian& g);

// throws if the integral is not an integer
mpz_class chi_hrr(const BundleExpr& b, const Grassmannian& g);
mpz_class chi_hrr(const ChernData& b, const Grassmannian& g);

// Hodge numbers h^{p,q}, p, q = 0..dim, of a smooth complete intersection of
// hypersurfaces of the given degrees (in the Pluecker embedding) in Gr(k,n)
std::vector<std::vector<long>> hodge_ci(int k, int n, const std::vector<int>& degrees);
std::vector<long> hodge_middle(int k, int n, int c);
// chi(Omega^p_X) for the same complete intersection
std::vector<mpz_class> chi_omega_ci(int k, int n, const std::vector<int>& degrees);

std::string render_diamond(const std::vector<std::vector<long>>& h);

}  // namespace qlwb
