#pragma once

/**
 * @file homology.hpp
 * @brief Exact integer linear algebra for abelianizations and witness arithmetic.
 *
 * Smith normal form over arbitrary-precision integers, abelianization of
 * finite presentations, the standard braid / symmetric / spherical braid /
 * SL2(Z) presentations, and the small group-homology computations that back
 * the positive answers of the decision engine.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace surfdecide {

using BigInt = boost::multiprecision::cpp_int;

class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n) {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntegerMatrix from_rows(const std::vector<std::vector<BigInt>>& rows) {
        const std::size_t c = rows.empty() ? 0 : rows.front().size();
        IntegerMatrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("IntegerMatrix: ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;
    friend std::ostream& operator<<(std::ostream& os, const IntegerMatrix& x) { return os << x.to_string(); }

    friend IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("IntegerMatrix: dimension mismatch");
        IntegerMatrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }

    /// Fraction-free (Bareiss) determinant.
    BigInt determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
        const std::size_t n = rows_;
        if (n == 0) return 1;
        IntegerMatrix m = *this;
        BigInt prev = 1;
        int sign = 1;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (m(k, k) == 0) {
                std::size_t p = k + 1;
                while (p < n && m(p, k) == 0) ++p;
                if (p == n) return 0;
                m.swap_rows(k, p);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i)
                for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            prev = m(k, k);
        }
        return sign * m(n - 1, n - 1);
    }

    void swap_rows(std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }
    void swap_cols(std::size_t i, std::size_t k) {
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, k));
    }
    /// row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
    }
    void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += f * (*this)(r, src);
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) os << ',';
            os << '[';
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
            os << ']';
        }
        os << ']';
        return os.str();
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> a_;
};

struct SNFResult {
    std::vector<BigInt> diagonal; ///< min(rows, cols) entries, each dividing the next
    IntegerMatrix left;           ///< rows x rows, unimodular
    IntegerMatrix right;          ///< cols x cols, unimodular
};

/**
 * Smith normal form with left * A * right = diag(d1, ..., dk).
 *
 * Pivot: smallest nonzero absolute value in the remaining block, ties to the
 * lowest (row, col) in row-major order.
 */
inline SNFResult smith_normal_form(const IntegerMatrix& a) {
    IntegerMatrix m = a;
    const std::size_t rows = a.rows(), cols = a.cols();
    IntegerMatrix left = IntegerMatrix::identity(rows);
    IntegerMatrix right = IntegerMatrix::identity(cols);
    const std::size_t k = std::min(rows, cols);

    const auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& f) {
        m.add_row(dst, src, f);
        left.add_row(dst, src, f);
    };
    const auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& f) {
        m.add_col(dst, src, f);
        right.add_col(dst, src, f);
    };

    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            std::optional<std::pair<std::size_t, std::size_t>> pivot;
            BigInt best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (m(i, j) == 0) continue;
                    const BigInt v = abs(m(i, j));
                    if (!pivot || v < best) {
                        pivot = {i, j};
                        best = v;
                    }
                }
            if (!pivot) break; // remaining block is zero

            if (pivot->first != t) {
                m.swap_rows(t, pivot->first);
                left.swap_rows(t, pivot->first);
            }
            if (pivot->second != t) {
                m.swap_cols(t, pivot->second);
                right.swap_cols(t, pivot->second);
            }

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0) continue;
                const BigInt q = m(i, t) / m(t, t);
                row_op(i, t, -q);
                if (m(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0) continue;
                const BigInt q = m(t, j) / m(t, t);
                col_op(j, t, -q);
                if (m(t, j) != 0) clean = false;
            }
            if (!clean) continue; // a smaller remainder is now the pivot candidate

            // pivot must divide the rest of the block
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row) break;
            row_op(t, *bad_row, 1);
        }
        if (m(t, t) < 0) {
            m.negate_row(t);
            left.negate_row(t);
        }
    }

    SNFResult r;
    for (std::size_t t = 0; t < k; ++t) r.diagonal.push_back(m(t, t));
    r.left = std::move(left);
    r.right = std::move(right);
    return r;
}

// ---------------------------------------------------------------------------
// Finite presentations and abelian groups
// ---------------------------------------------------------------------------

/// Generators 1..n; a relator is a word of signed generator indices (-i is the inverse of i).
struct FinitePresentation {
    std::size_t generators = 0;
    std::vector<std::vector<int>> relators;

    void check() const {
        for (const auto& w : relators)
            for (int x : w)
                if (x == 0 || static_cast<std::size_t>(std::abs(x)) > generators)
                    throw std::invalid_argument("FinitePresentation: generator index out of range");
    }

    /// `gens=n; rel=w1; rel=w2` with words as space-separated signed indices.
    std::string to_string() const {
        std::string s = "gens=" + std::to_string(generators);
        for (const auto& w : relators) {
            s += "; rel=";
            for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
        }
        return s;
    }
};

/// Z^rank + Z/t1 + ... + Z/tk with t1 | t2 | ... and each ti >= 2.
struct AbelianGroup {
    std::size_t rank = 0;
    std::vector<BigInt> torsion;

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
    friend std::ostream& operator<<(std::ostream& os, const AbelianGroup& x) { return os << x.to_string(); }

    bool is_trivial() const { return rank == 0 && torsion.empty(); }

    static AbelianGroup cyclic(const BigInt& n) {
        if (n == 0) return {1, {}};
        if (n == 1) return {};
        return {0, {n}};
    }

    std::string to_string() const {
        if (is_trivial()) return "0";
        std::string s;
        const auto add = [&s](const std::string& part) { s += (s.empty() ? "" : " + ") + part; };
        if (rank == 1) add("Z");
        else if (rank > 1) add("Z^" + std::to_string(rank));
        for (const auto& t : torsion) add("Z/" + t.str());
        return s;
    }
};

/// The quotient map Z^generators -> abelianization, in Smith coordinates.
class Abelianization {
public:
    explicit Abelianization(const FinitePresentation& p) : generators_(p.generators) {
        p.check();
        // relators with zero exponent sum (commutators) do not change the cokernel
        std::vector<std::vector<BigInt>> rows;
        for (const auto& w : p.relators) {
            std::vector<BigInt> row(p.generators);
            for (int x : w) row[static_cast<std::size_t>(std::abs(x)) - 1] += (x > 0 ? 1 : -1);
            if (std::ranges::any_of(row, [](const BigInt& v) { return v != 0; })) rows.push_back(std::move(row));
        }
        IntegerMatrix rel(rows.size(), p.generators);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t j = 0; j < p.generators; ++j) rel(r, j) = rows[r][j];
        auto snf = smith_normal_form(rel);
        right_ = std::move(snf.right);
        moduli_.assign(p.generators, BigInt(0));
        for (std::size_t i = 0; i < snf.diagonal.size(); ++i) moduli_[i] = snf.diagonal[i];
        for (const auto& d : moduli_) {
            if (d == 0) ++group_.rank;
            else if (d > 1) group_.torsion.push_back(d);
        }
    }

    const AbelianGroup& group() const { return group_; }

    /// Coordinates of a word: one entry per generator, reduced mod the Smith diagonal (0 means free).
    std::vector<BigInt> image(const std::vector<int>& word) const {
        std::vector<BigInt> exps(generators_);
        for (int x : word) exps.at(static_cast<std::size_t>(std::abs(x)) - 1) += (x > 0 ? 1 : -1);
        std::vector<BigInt> y(generators_);
        for (std::size_t j = 0; j < generators_; ++j) {
            for (std::size_t i = 0; i < generators_; ++i) y[j] += exps[i] * right_(i, j);
            if (moduli_[j] != 0) {
                y[j] %= moduli_[j];
                if (y[j] < 0) y[j] += moduli_[j];
            }
        }
        return y;
    }

    bool is_identity(const std::vector<int>& word) const {
        for (const auto& c : image(word))
            if (c != 0) return false;
        return true;
    }

    /// Smallest r >= 0 with image(word) = r * image(base), if any (searches r < bound).
    std::optional<std::uint64_t> multiple_of(const std::vector<int>& word, const std::vector<int>& base,
                                             std::uint64_t bound) const {
        const auto target = image(word);
        std::vector<int> acc;
        for (std::uint64_t r = 0; r < bound; ++r) {
            if (image(acc) == target) return r;
            acc.insert(acc.end(), base.begin(), base.end());
        }
        return std::nullopt;
    }

private:
    std::size_t generators_;
    IntegerMatrix right_;
    std::vector<BigInt> moduli_;
    AbelianGroup group_;
};

inline AbelianGroup abelianize(const FinitePresentation& p) { return Abelianization(p).group(); }

class PresetError : public std::invalid_argument {
public:
    enum class Kind { UnknownPreset, BadParameter };
    PresetError(Kind k, const std::string& msg) : std::invalid_argument(msg), kind(k) {}
    Kind kind;
};

namespace words {

/// s_i s_{i+1} ... s_j (or the descending product when i > j).
inline std::vector<int> run(int i, int j) {
    std::vector<int> w;
    if (i <= j)
        for (int k = i; k <= j; ++k) w.push_back(k);
    else
        for (int k = i; k >= j; --k) w.push_back(k);
    return w;
}

inline std::vector<int> inverse(std::vector<int> w) {
    std::reverse(w.begin(), w.end());
    for (int& x : w) x = -x;
    return w;
}

inline std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// Full twist (s_1 ... s_{n-1})^n in the braid group on n strands.
inline std::vector<int> full_twist(int n) {
    std::vector<int> w;
    for (int r = 0; r < n; ++r) w = concat(std::move(w), run(1, n - 1));
    return w;
}

/// Pure braid generator A_ij (1 <= i < j <= n): strand j loops once around strand i.
inline std::vector<int> pure_generator(int i, int j) {
    const auto conj = j - 1 > i ? run(j - 1, i + 1) : std::vector<int>{};
    return concat(concat(conj, {i, i}), inverse(conj));
}

} // namespace words

/// braid(n), symmetric(n), spherical_braid(n) for n >= 2; sl2z ignores n.
inline FinitePresentation preset(const std::string& name, int n = 0) {
    if (name == "sl2z") return {2, {{1, 1, 1, 1}, {2, 2, 2, 2, 2, 2}, {1, 1, -2, -2, -2}}};
    if (name != "braid" && name != "symmetric" && name != "spherical_braid")
        throw PresetError(PresetError::Kind::UnknownPreset, "unknown preset '" + name + "'");
    if (n < 2) throw PresetError(PresetError::Kind::BadParameter, name + ": need n >= 2");

    FinitePresentation p;
    p.generators = static_cast<std::size_t>(n - 1);
    for (int i = 1; i <= n - 1; ++i)
        for (int j = i + 1; j <= n - 1; ++j) {
            if (j == i + 1)
                p.relators.push_back({i, j, i, -j, -i, -j});
            else
                p.relators.push_back({i, j, -i, -j});
        }
    if (name == "symmetric")
        for (int i = 1; i <= n - 1; ++i) p.relators.push_back({i, i});
    if (name == "spherical_braid") p.relators.push_back(words::concat(words::run(1, n - 1), words::run(n - 1, 1)));
    return p;
}

/// Image of the full twist in the abelianization Z/(2n-2) of the spherical braid group.
struct FullTwistImage {
    std::uint64_t modulus = 0;  ///< 2n - 2
    std::uint64_t residue = 0;  ///< as a multiple of the image of s_1
};

inline FullTwistImage full_twist_image(int n) {
    if (n < 2) throw PresetError(PresetError::Kind::BadParameter, "full_twist_image: need n >= 2");
    const Abelianization ab(preset("spherical_braid", n));
    const auto modulus = static_cast<std::uint64_t>(2 * n - 2);
    if (!(ab.group() == AbelianGroup::cyclic(modulus)))
        throw std::logic_error("spherical braid abelianization is not Z/(2n-2)");
    const auto r = ab.multiple_of(words::full_twist(n), {1}, modulus);
    if (!r) throw std::logic_error("full twist image not in the subgroup generated by s_1");
    const auto expected = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) % modulus;
    if (*r != expected) throw std::logic_error("full twist image differs from n(n-1)");
    return {modulus, *r};
}

/// The commutative square Z/k --(*2)--> Z/2k under the braid-group abelianization.
struct SquareReport {
    int n = 0;
    std::uint64_t k = 0;
    std::uint64_t modulus = 0;          ///< 2k
    bool quotient_well_defined = false; ///< 2k divides 2n-2
    bool full_twist_vanishes = false;   ///< central Z/2 maps to 0 in Z/2k
    bool top_surjective = false;
    bool commutes = false;
    bool two_nonzero = false;           ///< 2 != 0 in Z/2k, i.e. k >= 2
};

inline std::uint64_t k_of(int n) {
    if (n < 2) throw PresetError(PresetError::Kind::BadParameter, "k_of: need n >= 2");
    return n % 2 == 0 ? static_cast<std::uint64_t>(n - 1) : static_cast<std::uint64_t>(n - 1) / 2;
}

/**
 * Verifies the square for n distinguished ends. Top-left generators are the
 * pure braids A_ij (pushing one boundary circle around another); each maps to
 * 1 in Z/k, and to 2 in Z/2k through the spherical braid abelianization
 * followed by the quotient Z/(2n-2) -> Z/2k.
 */
inline SquareReport spherical_square(int n) {
    SquareReport rep;
    rep.n = n;
    rep.k = k_of(n);
    rep.modulus = 2 * rep.k;
    const Abelianization ab(preset("spherical_braid", n));
    const auto big = static_cast<std::uint64_t>(2 * n - 2);
    rep.quotient_well_defined = big % rep.modulus == 0;

    const auto to_2k = [&](const std::vector<int>& w) {
        const auto r = ab.multiple_of(w, {1}, big);
        if (!r) throw std::logic_error("word outside the cyclic group generated by s_1");
        return *r % rep.modulus;
    };
    rep.full_twist_vanishes = to_2k(words::full_twist(n)) == 0;

    bool commutes = true;
    std::uint64_t span = rep.k; // gcd of the top images with k
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const std::uint64_t top = 1 % rep.k; // A_ij -> 1 in Z/k
            if (to_2k(words::pure_generator(i, j)) != (2 * top) % rep.modulus) commutes = false;
            span = std::gcd(span, top);
        }
    rep.commutes = commutes;
    rep.top_surjective = span == 1;
    rep.two_nonzero = 2 % rep.modulus != 0;
    return rep;
}

/**
 * Same report from exponent sums alone: every s_i has the same image in
 * B_n(S^2)^ab = Z/(2n-2), so a word maps to its exponent sum.
 */
inline SquareReport spherical_square_closed_form(int n) {
    SquareReport rep;
    rep.n = n;
    rep.k = k_of(n);
    rep.modulus = 2 * rep.k;
    const auto big = static_cast<std::uint64_t>(2 * n - 2);
    rep.quotient_well_defined = big % rep.modulus == 0;
    const auto nn = static_cast<std::uint64_t>(n);
    rep.full_twist_vanishes = (nn * (nn - 1)) % big % rep.modulus == 0;
    rep.commutes = (2 * (1 % rep.k)) % rep.modulus == 2 % rep.modulus;
    rep.top_surjective = true;
    rep.two_nonzero = 2 % rep.modulus != 0;
    return rep;
}

// ---------------------------------------------------------------------------
// Lookup data and Poincare series
// ---------------------------------------------------------------------------

enum class LookupKind { H1MapTorus, H2MapClosed };

struct LookupValue {
    AbelianGroup group;
    std::string citation;
};

class OutOfTable : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Low-degree homology of closed-surface mapping class groups (cited values).
inline LookupValue h_lookup(LookupKind kind, std::uint64_t g) {
    if (kind == LookupKind::H1MapTorus) {
        if (g != 1) throw OutOfTable("H1(Map(S_g)) is tabulated only for g = 1");
        return {AbelianGroup::cyclic(12), "H1(Map(S_1)) = H1(SL2(Z)) = Z/12"};
    }
    if (g < 2) throw OutOfTable("H2(Map(S_g)) is tabulated for g >= 2");
    if (g == 2) return {AbelianGroup::cyclic(2), "H2(Map(S_2)) = Z/2"};
    if (g == 3) return {AbelianGroup{1, {2}}, "H2(Map(S_3)) = Z + Z/2"};
    return {AbelianGroup::cyclic(0), "H2(Map(S_g)) = Z for g >= 4"};
}

enum class SeriesKind { TorusPower, WreathQuotient };

/**
 * Coefficients of t^0 .. t^max_degree for the rational Poincare series of
 * B((S^1)^p) = (1 - t^2)^(-p) and of B(S^1 wr S_p) = prod_{i=1..p} (1 - t^(2i))^(-1).
 */
inline std::vector<BigInt> poincare_series(SeriesKind kind, int p, int max_degree) {
    if (p < 1) throw std::invalid_argument("poincare_series: need p >= 1");
    if (max_degree < 0 || max_degree % 2 != 0) throw std::invalid_argument("poincare_series: max_degree must be even");
    std::vector<BigInt> c(static_cast<std::size_t>(max_degree) + 1);
    c[0] = 1;
    // multiply by 1/(1 - t^step): running prefix sums with stride `step`
    const auto divide = [&c](std::size_t step) {
        for (std::size_t d = step; d < c.size(); ++d) c[d] += c[d - step];
    };
    for (int i = 1; i <= p; ++i) {
        if (kind == SeriesKind::WreathQuotient && 2 * i > max_degree) break;
        divide(kind == SeriesKind::TorusPower ? 2 : static_cast<std::size_t>(2 * i));
    }
    return c;
}

} // namespace surfdecide
