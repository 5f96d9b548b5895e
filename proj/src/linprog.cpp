#include "rcbell/linprog.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rcbell {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Signals that the word-sized fast path cannot represent a value; the solver
// falls back to full multiprecision arithmetic.
struct Overflow {};

// Exact rational on int64 numerator/denominator, canonical (den > 0, reduced),
// with magnitudes capped at 2^62 so every cross product and sum fits a signed
// 128-bit intermediate. Any result outside the cap throws Overflow.
class SmallRat {
  public:
    SmallRat() : num_(0), den_(1) {}
    SmallRat(long long n) : num_(n), den_(1) { check(num_); }

    static SmallRat from_big(const Rational& r) {
        const BigInt& n = numerator(r);
        const BigInt& d = denominator(r);
        if (n > kCap || n < -kCap || d > kCap) throw Overflow{};
        SmallRat out;
        out.num_ = n.convert_to<std::int64_t>();
        out.den_ = d.convert_to<std::int64_t>();
        return out;
    }
    Rational to_big() const { return Rational(num_, den_); }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }

    friend SmallRat operator-(const SmallRat& a) {
        SmallRat out;
        out.num_ = -a.num_;
        out.den_ = a.den_;
        return out;
    }
    friend SmallRat operator+(const SmallRat& a, const SmallRat& b) {
        const std::int64_t g = std::gcd(a.den_, b.den_);
        const __int128 n =
            static_cast<__int128>(a.num_) * (b.den_ / g) + static_cast<__int128>(b.num_) * (a.den_ / g);
        const __int128 d = static_cast<__int128>(a.den_) * (b.den_ / g);
        return reduced(n, d);
    }
    friend SmallRat operator-(const SmallRat& a, const SmallRat& b) { return a + (-b); }
    friend SmallRat operator*(const SmallRat& a, const SmallRat& b) {
        const std::int64_t g1 = std::gcd(std::abs(a.num_), b.den_);
        const std::int64_t g2 = std::gcd(std::abs(b.num_), a.den_);
        const __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
        const __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
        SmallRat out;
        out.num_ = fit(n);
        out.den_ = fit(d);
        return out;  // cross-reduced factors keep the result canonical
    }
    friend SmallRat operator/(const SmallRat& a, const SmallRat& b) {
        if (b.num_ == 0) throw std::domain_error("division by zero");
        SmallRat inv;
        inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
        inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
        return a * inv;
    }
    SmallRat& operator+=(const SmallRat& o) { return *this = *this + o; }
    SmallRat& operator-=(const SmallRat& o) { return *this = *this - o; }
    SmallRat& operator*=(const SmallRat& o) { return *this = *this * o; }

    friend bool operator==(const SmallRat& a, const SmallRat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const SmallRat& a, const SmallRat& b) { return !(a == b); }
    friend bool operator<(const SmallRat& a, const SmallRat& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const SmallRat& a, const SmallRat& b) { return b < a; }
    friend bool operator<=(const SmallRat& a, const SmallRat& b) { return !(b < a); }
    friend bool operator>=(const SmallRat& a, const SmallRat& b) { return !(a < b); }

  private:
    static constexpr std::int64_t kCap = std::int64_t{1} << 62;
    static void check(std::int64_t v) {
        if (v > kCap || v < -kCap) throw Overflow{};
    }
    static std::int64_t fit(__int128 v) {
        if (v > kCap || v < -kCap) throw Overflow{};
        return static_cast<std::int64_t>(v);
    }
    static SmallRat reduced(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        SmallRat out;
        out.num_ = fit(n);
        out.den_ = fit(d == 0 ? 1 : d);
        return out;
    }

    std::int64_t num_, den_;
};

template <class S>
struct lp_scalar;

template <>
struct lp_scalar<Rational> {
    static Rational from_big(const Rational& r) { return r; }
    static Rational to_big(const Rational& r) { return r; }
    static bool is_zero(const Rational& r) { return r.is_zero(); }
};

template <>
struct lp_scalar<SmallRat> {
    static SmallRat from_big(const Rational& r) { return SmallRat::from_big(r); }
    static Rational to_big(const SmallRat& r) { return r.to_big(); }
    static bool is_zero(const SmallRat& r) { return r.is_zero(); }
};

// Dense simplex tableau. Column layout: structural variables, one artificial
// per original row, rhs. Artificial columns double as the lexicographic
// tie-break block (they carry the row-operation matrix), which is what makes
// the ratio test anti-cycling and what the dual extraction reads at the end.
template <class S>
class Tableau {
  public:
    explicit Tableau(const LinearProgram& lp)
        : n_(lp.num_vars), m_orig_(lp.rows.size()), cols_(n_ + m_orig_ + 1), orig_sign_(m_orig_, 1),
          rows_(m_orig_), basis_(m_orig_, kNone) {
        for (std::size_t i = 0; i < m_orig_; ++i) {
            rows_[i].assign(cols_, S(0));
            const bool flip = lp.rhs[i] < 0;
            orig_sign_[i] = flip ? -1 : 1;
            for (std::size_t j = 0; j < n_; ++j)
                rows_[i][j] = lp_scalar<S>::from_big(flip ? Rational(-lp.rows[i][j]) : lp.rows[i][j]);
            rows_[i][n_ + i] = S(1);
            rows_[i][cols_ - 1] = lp_scalar<S>::from_big(flip ? Rational(-lp.rhs[i]) : lp.rhs[i]);
        }
    }

    std::size_t structural() const { return n_; }
    std::size_t live_rows() const { return rows_.size(); }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const S& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    const S& rhs(std::size_t i) const { return rows_[i][cols_ - 1]; }
    int original_sign(std::size_t i) const { return orig_sign_[i]; }

    // Seeds the basis with singleton-positive columns (slack-like), so Phase I
    // starts with fewer artificial basics.
    void crash_basis() {
        std::vector<std::size_t> hits(n_, 0), hit_row(n_, 0);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (!lp_scalar<S>::is_zero(rows_[i][j])) {
                    ++hits[j];
                    hit_row[j] = i;
                }
        for (std::size_t j = 0; j < n_; ++j) {
            if (hits[j] != 1) continue;
            const std::size_t i = hit_row[j];
            if (basis_[i] != kNone || !(rows_[i][j] > S(0))) continue;
            scale_row(i, S(1) / rows_[i][j]);
            basis_[i] = j;
        }
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] == kNone) basis_[i] = n_ + i;
    }

    bool has_artificial_basic() const {
        for (std::size_t b : basis_)
            if (b >= n_) return true;
        return false;
    }

    // Dantzig pricing with the lexicographic ratio test: the leaving row is
    // the lexicographic minimum of (rhs, artificial block) / pivot among the
    // minimum-ratio candidates, which strictly decreases the objective row in
    // the lexicographic order and therefore cannot cycle. Returns false on an
    // unbounded direction.
    template <class Allow>
    bool run_phase(const std::vector<S>& cost, Allow allow) {
        red_.assign(cols_, S(0));
        for (std::size_t j = 0; j + 1 < cols_; ++j) red_[j] = cost_of(cost, j);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const S f = cost_of(cost, basis_[i]);
            if (lp_scalar<S>::is_zero(f)) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                if (!lp_scalar<S>::is_zero(rows_[i][j])) red_[j] -= f * rows_[i][j];
        }
        for (;;) {
            std::size_t enter = kNone;
            for (std::size_t j = 0; j + 1 < cols_; ++j)
                if (red_[j] < S(0) && allow(j) && (enter == kNone || red_[j] < red_[enter])) enter = j;
            if (enter == kNone) return true;

            std::size_t leave = kNone;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (!(rows_[i][enter] > S(0))) continue;
                if (leave == kNone) {
                    leave = i;
                    continue;
                }
                // Compare (rhs_i / a_i) against (rhs_leave / a_leave), then
                // break exact ties lexicographically over the artificial block.
                const int cmp = ratio_compare(i, leave, enter, cols_ - 1);
                if (cmp < 0) {
                    leave = i;
                } else if (cmp == 0) {
                    for (std::size_t c = n_; c < n_ + m_orig_; ++c) {
                        const int lex = ratio_compare(i, leave, enter, c);
                        if (lex < 0) leave = i;
                        if (lex != 0) break;
                    }
                }
            }
            if (leave == kNone) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        scale_row(row, S(1) / rows_[row][col]);
        nz_.clear();
        for (std::size_t j = 0; j < cols_; ++j)
            if (!lp_scalar<S>::is_zero(rows_[row][j])) nz_.push_back(j);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == row || lp_scalar<S>::is_zero(rows_[i][col])) continue;
            eliminate(rows_[i], rows_[row], nz_, rows_[i][col]);
        }
        if (!red_.empty() && !lp_scalar<S>::is_zero(red_[col])) eliminate(red_, rows_[row], nz_, red_[col]);
        basis_[row] = col;
    }

    // After Phase I: pivot artificial basics onto any nonzero structural
    // column (degenerate, rhs is 0); rows without structural support are
    // redundant equalities and are dropped.
    void resolve_artificial_basics() {
        std::vector<bool> drop(rows_.size(), false);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] < n_) continue;
            std::size_t col = kNone;
            for (std::size_t j = 0; j < n_; ++j)
                if (!lp_scalar<S>::is_zero(rows_[i][j])) {
                    col = j;
                    break;
                }
            if (col == kNone)
                drop[i] = true;
            else
                pivot(i, col);
        }
        std::size_t w = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (drop[i]) continue;
            if (w != i) {
                rows_[w] = std::move(rows_[i]);
                basis_[w] = basis_[i];
            }
            ++w;
        }
        rows_.resize(w);
        basis_.resize(w);
    }

  private:
    // sign of (row_u[col]/row_u[enter]) - (row_v[col]/row_v[enter]); both
    // pivot entries are positive, so cross-multiplication preserves order.
    int ratio_compare(std::size_t u, std::size_t v, std::size_t enter, std::size_t col) const {
        const S lhs = rows_[u][col] * rows_[v][enter];
        const S rhs_ = rows_[v][col] * rows_[u][enter];
        if (lhs < rhs_) return -1;
        if (rhs_ < lhs) return 1;
        return 0;
    }
    static void eliminate(std::vector<S>& target, const std::vector<S>& pivot_row,
                          const std::vector<std::size_t>& nonzeros, const S& factor_src) {
        const S factor = factor_src;  // factor_src aliases target[col]
        for (const std::size_t j : nonzeros) target[j] -= factor * pivot_row[j];
    }
    void scale_row(std::size_t i, const S& f) {
        if (f == S(1)) return;
        for (auto& v : rows_[i])
            if (!lp_scalar<S>::is_zero(v)) v *= f;
    }
    S cost_of(const std::vector<S>& cost, std::size_t j) const {
        return j < cost.size() ? cost[j] : S(0);
    }

    std::size_t n_, m_orig_, cols_;
    std::vector<int> orig_sign_;
    std::vector<std::vector<S>> rows_;
    std::vector<std::size_t> basis_;
    std::vector<S> red_;
    std::vector<std::size_t> nz_;
};

void verify_certificates(const LinearProgram& lp, const LPSolution& sol) {
    Rational obj(0);
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        if (sol.optimizer[j] < 0) throw std::logic_error("lp: optimizer has negative coordinate");
        obj += lp.objective[j] * sol.optimizer[j];
    }
    if (obj != sol.value) throw std::logic_error("lp: objective value mismatch");
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        Rational lhs(0);
        for (std::size_t j = 0; j < lp.num_vars; ++j) lhs += lp.rows[i][j] * sol.optimizer[j];
        if (lhs != lp.rhs[i]) throw std::logic_error("lp: optimizer violates a constraint");
    }
    Rational dual_obj(0);
    for (std::size_t i = 0; i < lp.rows.size(); ++i) dual_obj += lp.rhs[i] * sol.dual[i];
    if (dual_obj != sol.value) throw std::logic_error("lp: dual objective mismatch");
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        Rational col(0);
        for (std::size_t i = 0; i < lp.rows.size(); ++i) col += lp.rows[i][j] * sol.dual[i];
        if (col < lp.objective[j]) throw std::logic_error("lp: dual certificate infeasible");
    }
}

template <class S>
LPSolution solve_impl(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars, m = lp.rows.size();
    Tableau<S> tab(lp);
    tab.crash_basis();

    if (tab.has_artificial_basic()) {
        std::vector<S> phase1_cost(n + m, S(0));
        for (std::size_t i = 0; i < m; ++i) phase1_cost[n + i] = S(1);
        // Artificials may leave but never re-enter.
        if (!tab.run_phase(phase1_cost, [&](std::size_t j) { return j < n; }))
            throw std::logic_error("lp: phase one cannot be unbounded");
        S infeas(0);
        for (std::size_t i = 0; i < tab.live_rows(); ++i)
            if (tab.basis()[i] >= n) infeas += tab.rhs(i);
        if (!lp_scalar<S>::is_zero(infeas)) {
            LPSolution sol;
            sol.status = LPStatus::infeasible;
            return sol;
        }
        tab.resolve_artificial_basics();
    }

    std::vector<S> phase2_cost(n, S(0));
    for (std::size_t j = 0; j < n; ++j) phase2_cost[j] = -lp_scalar<S>::from_big(lp.objective[j]);
    if (!tab.run_phase(phase2_cost, [&](std::size_t j) { return j < n; })) {
        LPSolution sol;
        sol.status = LPStatus::unbounded;
        return sol;
    }

    LPSolution sol;
    sol.status = LPStatus::optimal;
    sol.optimizer.assign(n, Rational(0));
    for (std::size_t i = 0; i < tab.live_rows(); ++i)
        if (tab.basis()[i] < n) sol.optimizer[tab.basis()[i]] = lp_scalar<S>::to_big(tab.rhs(i));
    sol.value = 0;
    for (std::size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.optimizer[j];

    // y'_o = c2_B . (final artificial column o); original row o then carries
    // y_o = -sign_o * y'_o for the maximization dual. The certificate check
    // below enforces exactness rather than assuming it.
    sol.dual.assign(m, Rational(0));
    for (std::size_t o = 0; o < m; ++o) {
        S yprime(0);
        for (std::size_t k = 0; k < tab.live_rows(); ++k) {
            const std::size_t bk = tab.basis()[k];
            if (bk < n && !lp_scalar<S>::is_zero(phase2_cost[bk]) &&
                !lp_scalar<S>::is_zero(tab.at(k, n + o)))
                yprime += phase2_cost[bk] * tab.at(k, n + o);
        }
        sol.dual[o] = Rational(-tab.original_sign(o)) * lp_scalar<S>::to_big(yprime);
    }
    if (sol.status == LPStatus::optimal) verify_certificates(lp, sol);
    return sol;
}

}  // namespace

LPSolution solve_lp(const LinearProgram& lp) {
    if (lp.objective.size() != lp.num_vars) throw std::invalid_argument("lp: objective size mismatch");
    if (lp.rows.size() != lp.rhs.size()) throw std::invalid_argument("lp: rhs size mismatch");
    for (const auto& row : lp.rows)
        if (row.size() != lp.num_vars) throw std::invalid_argument("lp: row size mismatch");
    if (std::getenv("RCBELL_LP_BIG") == nullptr) {
        try {
            return solve_impl<SmallRat>(lp);
        } catch (const Overflow&) {
            // Values left the word-sized window; redo in multiprecision.
        }
    }
    return solve_impl<Rational>(lp);
}

}  // namespace rcbell
