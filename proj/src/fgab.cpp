#include "qlwb/fgab.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qlwb {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows[0].size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<long>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& k) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& k) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += k * (*this)(r, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

// Bareiss fraction-free elimination.
Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    SmithForm s{m, IntMatrix::identity(R), IntMatrix::identity(C)};
    IntMatrix& D = s.D;

    auto move_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
        D.swap_rows(t, i);
        s.U.swap_rows(t, i);
        D.swap_cols(t, j);
        s.V.swap_cols(t, j);
    };

    for (std::size_t t = 0; t < std::min(R, C); ++t) {
        std::size_t bi = R, bj = C;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j)
                if (D(i, j) != 0 && (bi == R || abs(D(i, j)) < abs(D(bi, bj)))) bi = i, bj = j;
        if (bi == R) break;
        move_pivot(t, bi, bj);

        for (;;) {
            for (std::size_t i = t + 1; i < R; ++i) {
                if (D(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_row(i, t, -q);
                s.U.add_row(i, t, -q);
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (D(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_col(j, t, -q);
                s.V.add_col(j, t, -q);
            }
            // smaller remainder left in the pivot row or column: promote it
            std::size_t pi = t, pj = t;
            for (std::size_t i = t + 1; i < R; ++i)
                if (D(i, t) != 0 && abs(D(i, t)) < abs(D(pi, pj))) pi = i, pj = t;
            for (std::size_t j = t + 1; j < C; ++j)
                if (D(t, j) != 0 && abs(D(t, j)) < abs(D(pi, pj))) pi = t, pj = j;
            if (pi != t || pj != t) {
                move_pivot(t, pi, pj);
                continue;
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < R && clean; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        D.add_row(t, i, 1);
                        s.U.add_row(t, i, 1);
                        clean = false;
                        break;
                    }
            if (clean) break;
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            s.U.negate_row(t);
        }
    }
    return s;
}

FgAbGroup::FgAbGroup(int free_rank, std::vector<Int> cyclic) : free_rank_(free_rank) {
    if (free_rank < 0) throw std::invalid_argument("negative free rank");
    std::vector<Int> a;
    for (auto& d : cyclic) {
        Int x = abs(d);
        if (x == 0)
            ++free_rank_;
        else if (x != 1)
            a.push_back(x);
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            Int g = gcd(a[i], a[j]);
            Int l = lcm(a[i], a[j]);
            a[i] = g;
            a[j] = l;
        }
    for (auto& x : a)
        if (x != 1) divisors_.push_back(x);
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

long parse_count(const std::string& s, std::string_view whole) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw std::invalid_argument("bad group token: " + std::string(whole));
    return std::stol(s);
}

}  // namespace

FgAbGroup FgAbGroup::parse(std::string_view text) {
    std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty group token");
    if (s == "0") return {};
    int free = 0;
    std::vector<Int> cyc;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t plus = s.find('+', pos);
        std::string term = trim(std::string_view(s).substr(pos, plus == std::string::npos ? std::string::npos : plus - pos));
        pos = plus == std::string::npos ? s.size() + 1 : plus + 1;
        if (term == "0") continue;
        long mult = 1;
        if (!term.empty() && term[0] == '(') {
            std::size_t close = term.find(')');
            if (close == std::string::npos) throw std::invalid_argument("bad group token: " + s);
            std::string inner = term.substr(1, close - 1);
            std::string rest = trim(std::string_view(term).substr(close + 1));
            if (!rest.empty()) {
                if (rest[0] != '^') throw std::invalid_argument("bad group token: " + s);
                mult = parse_count(trim(rest.substr(1)), s);
            }
            term = trim(inner);
        }
        if (term == "Z") {
            free += static_cast<int>(mult);
        } else if (term.rfind("Z^", 0) == 0) {
            free += static_cast<int>(mult * parse_count(trim(term.substr(2)), s));
        } else if (term.rfind("Z/", 0) == 0) {
            Int d(trim(term.substr(2)));
            if (d < 2) throw std::invalid_argument("cyclic order must be >= 2: " + s);
            for (long k = 0; k < mult; ++k) cyc.push_back(d);
        } else {
            throw std::invalid_argument("bad group token: " + s);
        }
    }
    return FgAbGroup(free, std::move(cyc));
}

Int FgAbGroup::generator_order(int i) const {
    if (i < 0 || i >= num_generators()) throw std::out_of_range("generator index");
    return i < free_rank_ ? Int(0) : divisors_[i - free_rank_];
}

Int FgAbGroup::torsion_order() const {
    Int p = 1;
    for (auto& d : divisors_) p *= d;
    return p;
}

FgAbGroup FgAbGroup::torsion() const { return FgAbGroup(0, divisors_); }

std::string FgAbGroup::str() const {
    if (is_zero()) return "0";
    std::vector<std::string> parts;
    if (free_rank_ == 1)
        parts.push_back("Z");
    else if (free_rank_ > 1)
        parts.push_back("Z^" + std::to_string(free_rank_));
    for (std::size_t i = 0; i < divisors_.size();) {
        std::size_t j = i;
        while (j < divisors_.size() && divisors_[j] == divisors_[i]) ++j;
        std::string z = "Z/" + divisors_[i].get_str();
        parts.push_back(j - i == 1 ? z : "(" + z + ")^" + std::to_string(j - i));
        i = j;
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
    return out;
}

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
    std::vector<Int> c = a.divisors();
    c.insert(c.end(), b.divisors().begin(), b.divisors().end());
    return FgAbGroup(a.rank() + b.rank(), std::move(c));
}

FgAbGroup operator+(const FgAbGroup& a, const FgAbGroup& b) { return direct_sum(a, b); }

FgAbGroup power(const FgAbGroup& a, int k) {
    FgAbGroup r;
    for (int i = 0; i < k; ++i) r = r + a;
    return r;
}

FgAbGroup cokernel(const IntMatrix& m) {
    SmithForm s = smith_normal_form(m);
    int free = 0;
    std::vector<Int> cyc;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i < m.cols() && s.D(i, i) != 0)
            cyc.push_back(s.D(i, i));
        else
            ++free;
    }
    return FgAbGroup(free, std::move(cyc));
}

FgAbGroup tensor_zmod(const FgAbGroup& g, long m) {
    if (m < 2) throw std::invalid_argument("modulus must be >= 2");
    std::vector<Int> c(g.rank(), Int(m));
    for (auto& d : g.divisors()) c.push_back(gcd(d, Int(m)));
    return FgAbGroup(0, std::move(c));
}

FgAbGroup m_torsion(const FgAbGroup& g, long m) {
    if (m < 2) throw std::invalid_argument("modulus must be >= 2");
    std::vector<Int> c;
    for (auto& d : g.divisors()) c.push_back(gcd(d, Int(m)));
    return FgAbGroup(0, std::move(c));
}

namespace {

// prime -> sorted exponents of the p-primary cyclic summands
std::map<Int, std::vector<unsigned long>> primary_parts(const FgAbGroup& g) {
    std::map<Int, std::vector<unsigned long>> out;
    for (Int d : g.divisors()) {
        for (Int p = 2; p * p <= d; ++p) {
            unsigned long e = 0;
            while (d % p == 0) d /= p, ++e;
            if (e) out[p].push_back(e);
        }
        if (d > 1) out[d].push_back(1);
    }
    for (auto& [p, v] : out) std::sort(v.begin(), v.end());
    return out;
}

}  // namespace

FgAbGroup complement(const FgAbGroup& whole, const FgAbGroup& summand) {
    auto fail = [&] {
        return std::invalid_argument(summand.str() + " is not a direct summand of " + whole.str());
    };
    if (summand.rank() > whole.rank()) throw fail();
    auto w = primary_parts(whole);
    auto s = primary_parts(summand);
    for (auto& [p, es] : s) {
        auto it = w.find(p);
        if (it == w.end()) throw fail();
        for (auto e : es) {
            auto f = std::find(it->second.begin(), it->second.end(), e);
            if (f == it->second.end()) throw fail();
            it->second.erase(f);
        }
    }
    std::vector<Int> cyc;
    for (auto& [p, es] : w)
        for (auto e : es) {
            Int q;
            mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), e);
            cyc.push_back(q);
        }
    return FgAbGroup(whole.rank() - summand.rank(), std::move(cyc));
}

long smallest_detecting_modulus(const FgAbGroup& g) {
    if (g.rank() > 0) return 2;
    if (g.divisors().empty()) return 0;
    Int d = g.divisors().back();
    for (long p = 2; Int(p) * p <= d; ++p)
        if (d % p == 0) return p;
    return d.get_si();
}

bool hom_well_defined(const FgAbGroup& src, const FgAbGroup& dst, const IntMatrix& f) {
    if (f.cols() != static_cast<std::size_t>(src.num_generators()) ||
        f.rows() != static_cast<std::size_t>(dst.num_generators()))
        return false;
    for (int j = src.rank(); j < src.num_generators(); ++j) {
        Int dj = src.generator_order(j);
        for (int i = 0; i < dst.num_generators(); ++i) {
            Int e = dst.generator_order(i);
            Int v = dj * f(i, j);
            if (e == 0 ? v != 0 : v % e != 0) return false;
        }
    }
    return true;
}

namespace {

// [f | relations of dst]
IntMatrix augmented(const FgAbGroup& src, const FgAbGroup& dst, const IntMatrix& f) {
    if (!hom_well_defined(src, dst, f)) throw std::invalid_argument("map is not a well-defined homomorphism");
    int ns = src.num_generators(), nd = dst.num_generators(), td = static_cast<int>(dst.divisors().size());
    IntMatrix a(nd, ns + td);
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < ns; ++j) a(i, j) = f(i, j);
    for (int k = 0; k < td; ++k) a(dst.rank() + k, ns + k) = dst.divisors()[k];
    return a;
}

}  // namespace

FgAbGroup hom_cokernel(const FgAbGroup& src, const FgAbGroup& dst, const IntMatrix& f) {
    return cokernel(augmented(src, dst, f));
}

FgAbGroup hom_kernel(const FgAbGroup& src, const FgAbGroup& dst, const IntMatrix& f) {
    IntMatrix a = augmented(src, dst, f);
    const std::size_t ns = src.num_generators();
    if (ns == 0) return {};
    SmithForm s = smith_normal_form(a);
    std::size_t rho = 0;
    while (rho < std::min(a.rows(), a.cols()) && s.D(rho, rho) != 0) ++rho;

    // preimage lattice L in Z^ns spanned by projected kernel vectors
    std::size_t nk = a.cols() - rho;
    IntMatrix K(ns, nk);
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < nk; ++j) K(i, j) = s.V(i, rho + j);

    SmithForm sk = smith_normal_form(K);
    std::size_t r2 = 0;
    while (r2 < std::min(K.rows(), K.cols()) && sk.D(r2, r2) != 0) ++r2;

    // L has basis B = first r2 columns of K*V, and U*B = diag(d). Express the
    // relations of src in that basis.
    std::size_t ts = src.divisors().size();
    IntMatrix Y(r2, ts);
    for (std::size_t k = 0; k < ts; ++k) {
        std::size_t g = src.rank() + k;
        const Int& dk = src.divisors()[k];
        for (std::size_t i = 0; i < r2; ++i) {
            Int v = sk.U(i, g) * dk;
            if (v % sk.D(i, i) != 0) throw std::logic_error("relation outside kernel lattice");
            Y(i, k) = v / sk.D(i, i);
        }
    }
    return cokernel(Y);
}

namespace {
const FgAbGroup kZero{};
}

const FgAbGroup& GradedAb::at(int i) const {
    if (i < 0 || i >= static_cast<int>(groups_.size())) return kZero;
    return groups_[i];
}

void GradedAb::set(int i, FgAbGroup g) {
    if (i < 0) throw std::out_of_range("negative degree");
    if (i >= static_cast<int>(groups_.size())) groups_.resize(i + 1);
    groups_[i] = std::move(g);
}

long GradedAb::euler_characteristic() const {
    long chi = 0;
    for (int i = 0; i <= top(); ++i) chi += (i % 2 ? -1 : 1) * at(i).rank();
    return chi;
}

std::string GradedAb::str() const {
    std::string s = "(";
    for (int i = 0; i <= top(); ++i) s += (i ? ", " : "") + at(i).str();
    return s + ")";
}

bool GradedAb::operator==(const GradedAb& o) const {
    int n = std::max(top(), o.top());
    for (int i = 0; i <= n; ++i)
        if (!(at(i) == o.at(i))) return false;
    return true;
}

}  // namespace qlwb
