#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "polynomial.hpp"

namespace annpoly {

enum class FieldKind { F3, F5, F7, F9, ComplexLike, RealLike };

inline std::string field_kind_name(FieldKind k) {
    switch (k) {
        case FieldKind::F3: return "f3";
        case FieldKind::F5: return "f5";
        case FieldKind::F7: return "f7";
        case FieldKind::F9: return "f9";
        case FieldKind::ComplexLike: return "c";
        case FieldKind::RealLike: return "r";
    }
    throw std::invalid_argument("field_kind_name: bad kind");
}

inline FieldKind field_kind_from_name(const std::string& s) {
    if (s == "f3") return FieldKind::F3;
    if (s == "f5") return FieldKind::F5;
    if (s == "f7") return FieldKind::F7;
    if (s == "f9") return FieldKind::F9;
    if (s == "c") return FieldKind::ComplexLike;
    if (s == "r") return FieldKind::RealLike;
    throw std::invalid_argument("unknown field model: " + s);
}

/**
 * Model field.  Finite fields hold full operation tables on element codes
 * 0..q-1; F_9 is F_3[t]/(t^2+1) with code a + 3b for a + bt.  ComplexLike and
 * RealLike are the two shortcut models (W = Z/2 by dimension parity, W = Z by
 * signature).
 */
class FieldModel {
public:
    explicit FieldModel(FieldKind kind) : kind_(kind) {
        if (!finite()) return;
        q_ = kind == FieldKind::F3 ? 3 : kind == FieldKind::F5 ? 5 : kind == FieldKind::F7 ? 7 : 9;
        add_.assign(q_ * q_, 0);
        mul_.assign(q_ * q_, 0);
        if (kind == FieldKind::F9) {
            for (unsigned x = 0; x < 9; ++x) {
                for (unsigned y = 0; y < 9; ++y) {
                    unsigned a = x % 3, b = x / 3, c = y % 3, d = y / 3;
                    add_[x * 9 + y] = (a + c) % 3 + 3 * ((b + d) % 3);
                    // (a+bt)(c+dt) with t^2 = -1 = 2
                    mul_[x * 9 + y] = (a * c + 2 * b * d) % 3 + 3 * ((a * d + b * c) % 3);
                }
            }
        } else {
            for (unsigned x = 0; x < q_; ++x)
                for (unsigned y = 0; y < q_; ++y) {
                    add_[x * q_ + y] = (x + y) % q_;
                    mul_[x * q_ + y] = (x * y) % q_;
                }
        }
        square_.assign(q_, false);
        for (unsigned x = 1; x < q_; ++x) square_[mul(x, x)] = true;
        for (unsigned x = 1; x < q_; ++x)
            if (!square_[x]) {
                nonresidue_ = x;
                break;
            }
    }

    FieldKind kind() const { return kind_; }
    bool finite() const { return kind_ != FieldKind::ComplexLike && kind_ != FieldKind::RealLike; }
    unsigned q() const { return require_finite(), q_; }

    unsigned add(unsigned x, unsigned y) const { return require_finite(), add_[x * q_ + y]; }
    unsigned mul(unsigned x, unsigned y) const { return require_finite(), mul_[x * q_ + y]; }
    unsigned neg(unsigned x) const {
        require_finite();
        for (unsigned y = 0; y < q_; ++y)
            if (add(x, y) == 0) return y;
        throw std::logic_error("FieldModel::neg");
    }
    unsigned sub(unsigned x, unsigned y) const { return add(x, neg(y)); }
    unsigned inv(unsigned x) const {
        require_finite();
        if (x == 0) throw std::domain_error("FieldModel::inv of zero");
        for (unsigned y = 1; y < q_; ++y)
            if (mul(x, y) == 1) return y;
        throw std::logic_error("FieldModel::inv");
    }

    bool is_square(unsigned x) const {
        require_finite();
        if (x == 0) throw std::domain_error("FieldModel::is_square of zero");
        return square_[x];
    }
    unsigned nonresidue() const { return require_finite(), nonresidue_; }
    unsigned square_class(unsigned x) const { return is_square(x) ? 1 : nonresidue_; }

    /// Level by brute-force sum-of-squares search; 0 encodes infinity (RealLike).
    unsigned level() const {
        if (kind_ == FieldKind::ComplexLike) return 1;
        if (kind_ == FieldKind::RealLike) return 0;
        unsigned minus_one = neg(1);
        for (unsigned n = 1; n <= 4; ++n) {
            if (sum_of_n_squares_reaches(minus_one, n)) return n;
        }
        throw std::logic_error("FieldModel::level: not found up to 4");
    }

private:
    void require_finite() const {
        if (!finite()) throw std::domain_error("FieldModel: finite-field operation on shortcut model");
    }

    bool sum_of_n_squares_reaches(unsigned target, unsigned n) const {
        // odometer over n-tuples of field elements
        std::vector<unsigned> t(n, 0);
        while (true) {
            unsigned s = 0;
            for (unsigned v : t) s = add(s, mul(v, v));
            if (s == target) return true;
            unsigned i = 0;
            while (i < n && ++t[i] == q_) t[i++] = 0;
            if (i == n) return false;
        }
    }

    FieldKind kind_;
    unsigned q_ = 0;
    std::vector<unsigned> add_, mul_;
    std::vector<bool> square_;
    unsigned nonresidue_ = 0;
};

/// Diagonal form <a_1,...,a_n> with nonzero entry codes over a finite model.
struct DiagonalForm {
    std::vector<unsigned> entries;
};

/**
 * Witt class.  Finite fields: canonical anisotropic representative (sorted
 * square-class codes, dimension <= 2).  RealLike: signature in sig.
 * ComplexLike: dimension parity in sig.
 */
struct WittClass {
    FieldKind field;
    std::vector<unsigned> rep;
    long sig = 0;

    auto operator<=>(const WittClass&) const = default;

    bool is_zero() const { return rep.empty() && sig == 0; }

    std::string to_string() const {
        if (field == FieldKind::RealLike || field == FieldKind::ComplexLike)
            return std::to_string(sig);
        if (rep.empty()) return "0";
        std::string out = "<";
        for (std::size_t i = 0; i < rep.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(rep[i]);
        }
        return out + ">";
    }
};

namespace detail {

inline unsigned quad_value(const FieldModel& F, const std::vector<unsigned>& diag,
                           const std::vector<unsigned>& v) {
    unsigned s = 0;
    for (std::size_t i = 0; i < diag.size(); ++i) s = F.add(s, F.mul(diag[i], F.mul(v[i], v[i])));
    return s;
}

inline unsigned bilinear_value(const FieldModel& F, const std::vector<unsigned>& diag,
                               const std::vector<unsigned>& v, const std::vector<unsigned>& w) {
    unsigned s = 0;
    for (std::size_t i = 0; i < diag.size(); ++i) s = F.add(s, F.mul(diag[i], F.mul(v[i], w[i])));
    return s;
}

/// Exhaustive search for a nonzero isotropic vector, lexicographic order.
inline std::optional<std::vector<unsigned>> find_isotropic(const FieldModel& F,
                                                           const std::vector<unsigned>& diag) {
    std::size_t n = diag.size();
    std::vector<unsigned> v(n, 0);
    while (true) {
        std::size_t i = 0;
        while (i < n && ++v[i] == F.q()) v[i++] = 0;
        if (i == n) return std::nullopt;
        if (quad_value(F, diag, v) == 0) return v;
    }
}

/// Basis of the joint kernel of the two linear forms x -> B(v,x), x -> B(w,x).
inline std::vector<std::vector<unsigned>> orthogonal_complement(const FieldModel& F,
                                                                const std::vector<unsigned>& diag,
                                                                const std::vector<unsigned>& v,
                                                                const std::vector<unsigned>& w) {
    std::size_t n = diag.size();
    std::vector<std::vector<unsigned>> rows(2, std::vector<unsigned>(n));
    for (std::size_t i = 0; i < n; ++i) {
        rows[0][i] = F.mul(diag[i], v[i]);
        rows[1][i] = F.mul(diag[i], w[i]);
    }
    // row echelon form
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < 2; ++col) {
        std::size_t sel = rank;
        while (sel < 2 && rows[sel][col] == 0) ++sel;
        if (sel == 2) continue;
        std::swap(rows[sel], rows[rank]);
        unsigned piv_inv = F.inv(rows[rank][col]);
        for (std::size_t j = 0; j < n; ++j) rows[rank][j] = F.mul(rows[rank][j], piv_inv);
        for (std::size_t rr = 0; rr < 2; ++rr) {
            if (rr == rank || rows[rr][col] == 0) continue;
            unsigned factor = rows[rr][col];
            for (std::size_t j = 0; j < n; ++j)
                rows[rr][j] = F.sub(rows[rr][j], F.mul(factor, rows[rank][j]));
        }
        pivots.push_back(col);
        ++rank;
    }
    std::vector<std::vector<unsigned>> basis;
    for (std::size_t col = 0; col < n; ++col) {
        if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) continue;
        std::vector<unsigned> u(n, 0);
        u[col] = 1;
        for (std::size_t rr = 0; rr < rank; ++rr) u[pivots[rr]] = F.neg(rows[rr][col]);
        basis.push_back(u);
    }
    return basis;
}

/// Diagonal of a congruence-diagonalized symmetric Gram matrix (char != 2).
inline std::vector<unsigned> congruence_diagonalize(const FieldModel& F,
                                                    std::vector<std::vector<unsigned>> G) {
    std::size_t m = G.size();
    std::vector<unsigned> diag;
    for (std::size_t i = 0; i < m; ++i) {
        if (G[i][i] == 0) {
            std::size_t j = i + 1;
            while (j < m && G[j][j] == 0) ++j;
            if (j < m) {
                std::swap(G[i], G[j]);
                for (auto& row : G) std::swap(row[i], row[j]);
            } else {
                for (j = i + 1; j < m && G[i][j] == 0; ++j) {}
                if (j == m) throw std::logic_error("congruence_diagonalize: singular block");
                for (std::size_t t = 0; t < m; ++t) G[i][t] = F.add(G[i][t], G[j][t]);
                for (std::size_t t = 0; t < m; ++t) G[t][i] = F.add(G[t][i], G[t][j]);
            }
        }
        unsigned p_inv = F.inv(G[i][i]);
        for (std::size_t j = i + 1; j < m; ++j) {
            unsigned lam = F.mul(G[j][i], p_inv);
            if (lam == 0) continue;
            for (std::size_t t = 0; t < m; ++t) G[j][t] = F.sub(G[j][t], F.mul(lam, G[i][t]));
            for (std::size_t t = 0; t < m; ++t) G[t][j] = F.sub(G[t][j], F.mul(lam, G[t][i]));
        }
        diag.push_back(G[i][i]);
    }
    return diag;
}

/// Unique canonical representative of an anisotropic form (dim <= 2 over F_q).
inline std::vector<unsigned> canonicalize_anisotropic(const FieldModel& F,
                                                      const std::vector<unsigned>& diag) {
    if (diag.empty()) return {};
    if (diag.size() == 1) return {F.square_class(diag[0])};
    if (diag.size() == 2) {
        // find the least square class the form represents, by exhaustive search
        unsigned det = F.mul(diag[0], diag[1]);
        std::vector<unsigned> best;
        for (unsigned c : {1u, F.nonresidue()}) {
            bool represented = false;
            for (unsigned x = 0; x < F.q() && !represented; ++x)
                for (unsigned y = 0; y < F.q(); ++y)
                    if (F.add(F.mul(diag[0], F.mul(x, x)), F.mul(diag[1], F.mul(y, y))) == c) {
                        represented = true;
                        break;
                    }
            if (represented) {
                // <a,b> = <c, c'> with c c' = det up to squares
                unsigned other = F.square_class(F.mul(det, c));
                best = {c, other};
                std::sort(best.begin(), best.end());
                return best;
            }
        }
        throw std::logic_error("canonicalize_anisotropic: binary form represents nothing");
    }
    throw std::logic_error("canonicalize_anisotropic: kernel dimension > 2 over a finite field");
}

}  // namespace detail

/**
 * Witt decomposition by exhaustive isotropy search: split hyperbolic planes
 * until the remaining diagonal form is anisotropic, then canonicalize.
 * Finite models only; dimension capped at 8.
 */
inline WittClass witt_reduce(const FieldModel& F, const DiagonalForm& form) {
    if (!F.finite()) throw std::domain_error("witt_reduce: finite models only");
    if (form.entries.size() > 8) throw std::length_error("witt_reduce: dimension > 8");
    for (unsigned a : form.entries)
        if (a == 0 || a >= F.q()) throw std::invalid_argument("witt_reduce: bad entry");

    std::vector<unsigned> diag = form.entries;
    while (!diag.empty()) {
        auto iso = detail::find_isotropic(F, diag);
        if (!iso) break;
        const std::vector<unsigned>& v = *iso;
        std::size_t n = diag.size();
        // w0 = e_j with B(v, e_j) != 0, scaled to B(v,w) = 1
        std::size_t j = 0;
        while (j < n && F.mul(diag[j], v[j]) == 0) ++j;
        std::vector<unsigned> w(n, 0);
        w[j] = F.inv(F.mul(diag[j], v[j]));
        // make w isotropic: w -= (Q(w)/2) v
        unsigned half = F.inv(2 % F.q());
        unsigned lam = F.mul(detail::quad_value(F, diag, w), half);
        for (std::size_t i = 0; i < n; ++i) w[i] = F.sub(w[i], F.mul(lam, v[i]));
        // restrict the form to the orthogonal complement of the plane (v,w)
        auto basis = detail::orthogonal_complement(F, diag, v, w);
        std::vector<std::vector<unsigned>> gram(basis.size(),
                                                std::vector<unsigned>(basis.size()));
        for (std::size_t s = 0; s < basis.size(); ++s)
            for (std::size_t t = 0; t < basis.size(); ++t)
                gram[s][t] = detail::bilinear_value(F, diag, basis[s], basis[t]);
        diag = detail::congruence_diagonalize(F, gram);
    }
    return WittClass{F.kind(), detail::canonicalize_anisotropic(F, diag), 0};
}

inline WittClass zero_class(const FieldModel& F) { return WittClass{F.kind(), {}, 0}; }

inline WittClass unit_class(const FieldModel& F) {
    if (F.kind() == FieldKind::RealLike || F.kind() == FieldKind::ComplexLike)
        return WittClass{F.kind(), {}, 1};
    return WittClass{F.kind(), {1}, 0};
}

namespace detail {

inline void check_model(const FieldModel& F, const WittClass& x) {
    if (x.field != F.kind()) throw std::invalid_argument("WittClass: model mismatch");
}

}  // namespace detail

inline WittClass class_add(const FieldModel& F, const WittClass& x, const WittClass& y) {
    detail::check_model(F, x);
    detail::check_model(F, y);
    if (F.kind() == FieldKind::RealLike) return WittClass{x.field, {}, x.sig + y.sig};
    if (F.kind() == FieldKind::ComplexLike) return WittClass{x.field, {}, (x.sig + y.sig) % 2};
    DiagonalForm sum{x.rep};
    sum.entries.insert(sum.entries.end(), y.rep.begin(), y.rep.end());
    return witt_reduce(F, sum);
}

inline WittClass class_neg(const FieldModel& F, const WittClass& x) {
    detail::check_model(F, x);
    if (F.kind() == FieldKind::RealLike) return WittClass{x.field, {}, -x.sig};
    if (F.kind() == FieldKind::ComplexLike) return x;
    DiagonalForm neg;
    for (unsigned a : x.rep) neg.entries.push_back(F.neg(a));
    return witt_reduce(F, neg);
}

inline WittClass class_mul(const FieldModel& F, const WittClass& x, const WittClass& y) {
    detail::check_model(F, x);
    detail::check_model(F, y);
    if (F.kind() == FieldKind::RealLike) return WittClass{x.field, {}, x.sig * y.sig};
    if (F.kind() == FieldKind::ComplexLike) return WittClass{x.field, {}, (x.sig * y.sig) % 2};
    DiagonalForm prod;
    for (unsigned a : x.rep)
        for (unsigned b : y.rep) prod.entries.push_back(F.mul(a, b));
    return witt_reduce(F, prod);
}

/// c . x = sign(c) (x + ... + x), |c| summands.
inline WittClass scalar_mul(const FieldModel& F, const mpz_class& c, const WittClass& x) {
    detail::check_model(F, x);
    if (F.kind() == FieldKind::RealLike) {
        mpz_class s = c * x.sig;
        if (!s.fits_slong_p()) throw std::overflow_error("scalar_mul: signature overflow");
        return WittClass{x.field, {}, s.get_si()};
    }
    mpz_class a = abs(c);
    if (F.kind() == FieldKind::ComplexLike)
        return WittClass{x.field, {}, mpz_odd_p(a.get_mpz_t()) ? x.sig : 0};
    // finite: 2s W = 0, so reduce the count mod the additive exponent
    unsigned long h = 2 * F.level();
    unsigned long count = mpz_class(a % h).get_ui();
    WittClass base = c < 0 ? class_neg(F, x) : x;
    WittClass acc = zero_class(F);
    for (unsigned long i = 0; i < count; ++i) acc = class_add(F, acc, base);
    return acc;
}

/// f(x) in W, Horner; the constant term contributes c_0 . <1>.
inline WittClass eval_poly_on_class(const FieldModel& F, const IntPoly& f, const WittClass& x) {
    detail::check_model(F, x);
    WittClass acc = zero_class(F);
    WittClass unit = unit_class(F);
    for (int q = f.degree(); q >= 0; --q) {
        acc = class_mul(F, acc, x);
        acc = class_add(F, acc, scalar_mul(F, f.coeff(static_cast<std::size_t>(q)), unit));
    }
    return acc;
}

enum class Family { All, Even, Odd, Torsion, ExactDim };

inline std::string family_name(Family f, unsigned exact_dim = 0) {
    switch (f) {
        case Family::All: return "all";
        case Family::Even: return "even";
        case Family::Odd: return "odd";
        case Family::Torsion: return "torsion";
        case Family::ExactDim: return "dim=" + std::to_string(exact_dim);
    }
    throw std::invalid_argument("family_name: bad family");
}

/**
 * All Witt classes arising from diagonal forms with square-class entries of
 * dimension up to dim (or exactly exact_dim), reduced and deduplicated, in
 * canonical order.
 */
inline std::vector<WittClass> enumerate_classes(unsigned dim, const FieldModel& F, Family family,
                                                unsigned exact_dim = 0) {
    if (F.finite() && dim > 6) throw std::length_error("enumerate_classes: dim > 6");
    std::set<WittClass> classes;
    auto want_dim = [&](unsigned d) {
        switch (family) {
            case Family::All: return true;
            case Family::Even: return d % 2 == 0;
            case Family::Odd: return d % 2 == 1;
            case Family::Torsion:
                return F.kind() == FieldKind::RealLike ? d == 0 : true;
            case Family::ExactDim: return d == exact_dim;
        }
        return false;
    };

    std::vector<unsigned> reps;
    if (F.finite())
        reps = {1, F.nonresidue()};
    else if (F.kind() == FieldKind::RealLike)
        reps = {0, 1};  // codes for +1, -1
    else
        reps = {0};  // single square class

    unsigned top = family == Family::ExactDim ? exact_dim : dim;
    unsigned bottom = family == Family::ExactDim ? exact_dim : 0;
    for (unsigned d = bottom; d <= top; ++d) {
        if (!want_dim(d)) continue;
        std::vector<std::size_t> idx(d, 0);
        while (true) {
            if (F.finite()) {
                DiagonalForm form;
                for (std::size_t i : idx) form.entries.push_back(reps[i]);
                classes.insert(witt_reduce(F, form));
            } else if (F.kind() == FieldKind::RealLike) {
                long sig = 0;
                for (std::size_t i : idx) sig += i == 0 ? 1 : -1;
                classes.insert(WittClass{F.kind(), {}, sig});
            } else {
                classes.insert(WittClass{F.kind(), {}, static_cast<long>(d % 2)});
            }
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == reps.size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    return {classes.begin(), classes.end()};
}

struct AnnihilationReport {
    std::string model;
    std::string family;
    std::string poly;
    std::size_t classes_checked = 0;
    bool pass = false;
    std::optional<std::string> counterexample;
};

/// Evaluates f on every enumerated class of the family; pass iff all vanish.
inline AnnihilationReport verify_annihilation(const IntPoly& f, const FieldModel& F, Family family,
                                              unsigned dim_cap, unsigned exact_dim = 0) {
    AnnihilationReport rep;
    rep.model = field_kind_name(F.kind());
    rep.family = family_name(family, exact_dim);
    rep.poly = format_polynomial(f);
    rep.pass = true;
    for (const WittClass& x : enumerate_classes(dim_cap, F, family, exact_dim)) {
        ++rep.classes_checked;
        if (!eval_poly_on_class(F, f, x).is_zero()) {
            rep.pass = false;
            rep.counterexample = x.to_string();
            break;
        }
    }
    return rep;
}

inline nlohmann::json annihilation_report_to_json(const AnnihilationReport& rep) {
    nlohmann::json j{{"model", rep.model},
                     {"family", rep.family},
                     {"polynomial", rep.poly},
                     {"classes_checked", rep.classes_checked},
                     {"pass", rep.pass}};
    j["counterexample"] = rep.counterexample ? nlohmann::json(*rep.counterexample)
                                             : nlohmann::json(nullptr);
    return j;
}

inline std::string annihilation_report_to_csv(const AnnihilationReport& rep) {
    std::ostringstream out;
    out << "model,family,polynomial,classes_checked,pass,counterexample\n";
    out << rep.model << ',' << rep.family << ",\"" << rep.poly << "\"," << rep.classes_checked
        << ',' << (rep.pass ? "true" : "false") << ','
        << (rep.counterexample ? *rep.counterexample : "") << '\n';
    return out.str();
}

}  // namespace annpoly
