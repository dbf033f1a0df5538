#include "wigmom/weyl.hpp"

#include <cmath>
#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "wigmom/combinatorics.hpp"

namespace wigmom {
namespace {

void require_index(int m, int n) {
    if (m < 0 || n < 0) {
        throw std::invalid_argument("monomial index must have m, n >= 0");
    }
    if (m + n > kMaxMonomialDegree) {
        throw std::invalid_argument("monomial degree " + std::to_string(m + n) +
                                    " exceeds supported cap " +
                                    std::to_string(kMaxMonomialDegree));
    }
}

void require_same_hbar(const WeylPolynomial& a, const WeylPolynomial& b, const char* who) {
    if (a.hbar() != b.hbar()) {
        throw std::invalid_argument(std::string(who) + ": operands carry different hbar");
    }
}

// i^k * (-1)^r as a unit complex number.
std::complex<double> product_phase(int r, int s) {
    static const std::complex<double> cycle[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::complex<double> phase = cycle[(r + s) % 4];
    return (r % 2 != 0) ? -phase : phase;
}

std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

// Renders |c| * "T[m,n]" without a sign; the caller decides the joiner.
std::string format_term(std::complex<double> c, const MonomialIndex& idx) {
    std::string label = "T[" + std::to_string(idx.m) + "," + std::to_string(idx.n) + "]";
    if (c.imag() == 0.0) {
        if (c.real() == 1.0) {
            return label;
        }
        return format_number(c.real()) + "*" + label;
    }
    if (c.real() == 0.0) {
        return format_number(c.imag()) + "i*" + label;
    }
    std::string im = (c.imag() < 0 ? "-" : "+") + format_number(std::abs(c.imag()));
    return "(" + format_number(c.real()) + im + "i)*" + label;
}

}  // namespace

WeylPolynomial::WeylPolynomial(double hbar) : hbar_(hbar) {
    if (!(hbar >= 0.0) || !std::isfinite(hbar)) {
        throw std::invalid_argument("WeylPolynomial: hbar must be finite and nonnegative");
    }
}

WeylPolynomial WeylPolynomial::monomial(int m, int n, Coefficient coefficient, double hbar) {
    require_index(m, n);
    WeylPolynomial p(hbar);
    p.add_term(m, n, coefficient);
    return p;
}

int WeylPolynomial::degree() const noexcept {
    int deg = 0;
    for (const auto& [idx, c] : terms_) {
        deg = std::max(deg, idx.degree());
    }
    return deg;
}

WeylPolynomial::Coefficient WeylPolynomial::coefficient(int m, int n) const {
    auto it = terms_.find(MonomialIndex{m, n});
    return it == terms_.end() ? Coefficient{0.0} : it->second;
}

double WeylPolynomial::max_abs_coefficient() const noexcept {
    double best = 0.0;
    for (const auto& [idx, c] : terms_) {
        best = std::max(best, std::abs(c));
    }
    return best;
}

bool WeylPolynomial::is_hermitian(double tol) const {
    double scale = std::max(1.0, max_abs_coefficient());
    for (const auto& [idx, c] : terms_) {
        if (std::abs(c.imag()) > tol * scale) {
            return false;
        }
    }
    return true;
}

WeylPolynomial WeylPolynomial::conjugated() const {
    WeylPolynomial out(hbar_);
    for (const auto& [idx, c] : terms_) {
        out.terms_[idx] = std::conj(c);
    }
    return out;
}

void WeylPolynomial::add_term(int m, int n, Coefficient c) {
    require_index(m, n);
    MonomialIndex idx{m, n};
    auto [it, inserted] = terms_.try_emplace(idx, c);
    if (!inserted) {
        it->second += c;
    }
    if (it->second == Coefficient{0.0}) {
        terms_.erase(it);
    }
}

WeylPolynomial& WeylPolynomial::canonicalize(double relative_cutoff) {
    double cutoff = relative_cutoff * max_abs_coefficient();
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < cutoff || it->second == Coefficient{0.0}) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    return *this;
}

WeylPolynomial& WeylPolynomial::operator+=(const WeylPolynomial& rhs) {
    require_same_hbar(*this, rhs, "operator+=");
    for (const auto& [idx, c] : rhs.terms_) {
        add_term(idx.m, idx.n, c);
    }
    return *this;
}

WeylPolynomial& WeylPolynomial::operator-=(const WeylPolynomial& rhs) {
    require_same_hbar(*this, rhs, "operator-=");
    for (const auto& [idx, c] : rhs.terms_) {
        add_term(idx.m, idx.n, -c);
    }
    return *this;
}

WeylPolynomial& WeylPolynomial::operator*=(Coefficient scalar) {
    if (scalar == Coefficient{0.0}) {
        terms_.clear();
        return *this;
    }
    for (auto& [idx, c] : terms_) {
        c *= scalar;
    }
    return *this;
}

std::string WeylPolynomial::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::vector<std::pair<MonomialIndex, Coefficient>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) {
            return a.first.degree() > b.first.degree();
        }
        return a.first.m > b.first.m;
    });
    std::string out;
    for (const auto& [idx, c] : ordered) {
        bool negative = (c.imag() == 0.0 && c.real() < 0.0) || (c.real() == 0.0 && c.imag() < 0.0);
        Coefficient magnitude = negative ? -c : c;
        if (out.empty()) {
            out = (negative ? "-" : "") + format_term(magnitude, idx);
        } else {
            out += (negative ? " - " : " + ") + format_term(magnitude, idx);
        }
    }
    return out;
}

WeylPolynomial operator+(WeylPolynomial lhs, const WeylPolynomial& rhs) {
    lhs += rhs;
    return lhs.canonicalize();
}

WeylPolynomial operator-(WeylPolynomial lhs, const WeylPolynomial& rhs) {
    lhs -= rhs;
    return lhs.canonicalize();
}

WeylPolynomial operator*(WeylPolynomial::Coefficient scalar, WeylPolynomial p) {
    p *= scalar;
    return p;
}

WeylPolynomial weyl_product(const WeylPolynomial& lhs, const WeylPolynomial& rhs) {
    require_same_hbar(lhs, rhs, "weyl_product");
    const double half_hbar = 0.5 * lhs.hbar();
    WeylPolynomial out(lhs.hbar());
    for (const auto& [a, ca] : lhs.terms()) {
        for (const auto& [b, cb] : rhs.terms()) {
            const int m = a.m, n = a.n, mp = b.m, np = b.n;
            const std::complex<double> cc = ca * cb;
            const int s_max = std::min(m, np);
            const int r_max = std::min(n, mp);
            for (int s = 0; s <= s_max; ++s) {
                for (int r = 0; r <= r_max; ++r) {
                    double magnitude = std::pow(half_hbar, r + s) *
                                       falling_factorial(m, s) * falling_factorial(n, r) *
                                       binomial(mp, r) * binomial(np, s);
                    out.add_term(m + mp - r - s, n + np - r - s,
                                 cc * product_phase(r, s) * magnitude);
                }
            }
        }
    }
    return out.canonicalize();
}

WeylPolynomial commutator(const WeylPolynomial& lhs, const WeylPolynomial& rhs) {
    WeylPolynomial out = weyl_product(lhs, rhs);
    out -= weyl_product(rhs, lhs);
    return out.canonicalize();
}

int xi_dimension(int two_J) noexcept {
    return (two_J + 1) * (two_J + 2) / 2;
}

int xi_flat_index(int two_j, int two_s) {
    if (two_j < 0 || std::abs(two_s) > two_j || (two_j + two_s) % 2 != 0) {
        throw std::invalid_argument("xi_flat_index: invalid (two_j, two_s)");
    }
    return two_j * (two_j + 1) / 2 + (two_j + two_s) / 2;
}

XiVector xi_vector(int two_J) {
    if (two_J < 0) {
        throw std::invalid_argument("xi_vector: two_J must be nonnegative");
    }
    if (two_J > kMaxMonomialDegree) {
        throw std::invalid_argument("xi_vector: 2J exceeds the supported degree cap");
    }
    XiVector xi;
    xi.two_J = two_J;
    xi.entries.reserve(xi_dimension(two_J));
    for (int two_j = 0; two_j <= two_J; ++two_j) {
        // s ascending over -j..j means the q-heavy monomial comes first.
        for (int t = 0; t <= two_j; ++t) {
            xi.entries.push_back(MonomialIndex{two_j - t, t});
        }
    }
    return xi;
}

}  // namespace wigmom
