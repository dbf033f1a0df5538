#ifndef WIGMOM_WEYL_HPP
#define WIGMOM_WEYL_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace wigmom {

/// Label of the symmetrically ordered monomial T[m,n], the average of all
/// orderings of m position and n momentum factors. T[0,0] is the identity.
struct MonomialIndex {
    int m = 0;
    int n = 0;

    int degree() const noexcept { return m + n; }
    auto operator<=>(const MonomialIndex&) const = default;
};

/// Finite linear combination of T[m,n] with complex coefficients, tied to a
/// fixed value of hbar.
///
/// Coefficients are held in canonical sparse form: exact zeros are never
/// stored, and canonicalize() prunes terms whose magnitude falls below
/// 1e-15 of the largest coefficient. Since every T[m,n] is hermitian, the
/// polynomial is hermitian exactly when all coefficients are real.
class WeylPolynomial {
  public:
    using Coefficient = std::complex<double>;
    using TermMap = std::map<MonomialIndex, Coefficient>;

    explicit WeylPolynomial(double hbar = 1.0);

    static WeylPolynomial monomial(int m, int n, Coefficient coefficient = 1.0,
                                   double hbar = 1.0);

    double hbar() const noexcept { return hbar_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }

    /// Largest total degree over stored terms; 0 for the zero polynomial.
    int degree() const noexcept;

    /// Coefficient of T[m,n], zero when the term is absent.
    Coefficient coefficient(int m, int n) const;

    double max_abs_coefficient() const noexcept;
    bool is_hermitian(double tol = 1e-12) const;
    WeylPolynomial conjugated() const;

    /// Accumulates c into the T[m,n] coefficient. Exact zeros are erased.
    void add_term(int m, int n, Coefficient c);

    WeylPolynomial& canonicalize(double relative_cutoff = 1e-15);

    WeylPolynomial& operator+=(const WeylPolynomial& rhs);
    WeylPolynomial& operator-=(const WeylPolynomial& rhs);
    WeylPolynomial& operator*=(Coefficient scalar);

    /// Debug rendering, e.g. "T[2,1] + 1i*T[1,0]". Terms are listed by
    /// descending total degree.
    std::string to_string() const;

  private:
    TermMap terms_;
    double hbar_ = 1.0;
};

WeylPolynomial operator+(WeylPolynomial lhs, const WeylPolynomial& rhs);
WeylPolynomial operator-(WeylPolynomial lhs, const WeylPolynomial& rhs);
WeylPolynomial operator*(WeylPolynomial::Coefficient scalar, WeylPolynomial p);

/// Operator product expanded back into the symmetrically ordered basis:
///
///   T[m,n] T[m',n'] = sum_{r,s} d_{r,s} T[m+m'-r-s, n+n'-r-s]
///   d_{r,s} = (-1)^r (i hbar / 2)^{r+s} m! n! / ((m-s)! (n-r)!)
///             * C(m',r) * C(n',s)
///
/// with 0 <= s <= min(m, n') and 0 <= r <= min(n, m'). The integer factors
/// are evaluated exactly before conversion to floating point. Both operands
/// must carry the same hbar and stay within the supported degree cap.
WeylPolynomial weyl_product(const WeylPolynomial& lhs, const WeylPolynomial& rhs);

/// weyl_product(a, b) - weyl_product(b, a).
WeylPolynomial commutator(const WeylPolynomial& lhs, const WeylPolynomial& rhs);

/// Ordered basis of all monomials of degree at most 2J: blocks of fixed
/// degree 2j for two_j = 0..two_J, each block running through
/// (m, n) = (j - s, j + s) with s ascending from -j to +j.
struct XiVector {
    int two_J = 0;
    std::vector<MonomialIndex> entries;
};

/// (2J+1)(2J+2)/2, the total basis length.
int xi_dimension(int two_J) noexcept;

/// Flat position of the (j, s) entry, both given as doubled integers.
int xi_flat_index(int two_j, int two_s);

XiVector xi_vector(int two_J);

}  // namespace wigmom

#endif
