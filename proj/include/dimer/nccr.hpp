#pragma once

#include "dimer/graph.hpp"
#include "dimer/matchings.hpp"
#include "dimer/quiver.hpp"
#include "dimer/toric.hpp"
#include "dimer/zigzag.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace dimer {

/// Everything derived from a consistent dimer model that the module
/// computations need: quiver, matchings, ordered extremal matchings, and the
/// toric data of the perfect matching polygon with rays in the same order.
struct NccrContext {
    DimerModel model;
    Quiver quiver;
    Potential potential;
    std::vector<PerfectMatching> pms;
    PMPolygon polygon;
    std::vector<ExtremalMatching> extremal;
    ToricData toric;

    static NccrContext build(const DimerModel &m) {
        if (auto c = is_consistent(m); !c)
            throw Error(ErrorCode::InconsistentModel, "model is not consistent: " + c.detail);
        NccrContext ctx;
        ctx.model = m;
        std::tie(ctx.quiver, ctx.potential) = dualize(m);
        ctx.pms = enumerate_pms(m);
        ctx.polygon = pm_polygon(m, ctx.pms);
        ctx.extremal = extremal_pms(ctx.polygon);
        ctx.toric = ToricData::from_polygon(ctx.polygon.polygon());
        return ctx;
    }

    const PerfectMatching &extremal_matching(std::size_t k) const { return pms[extremal[k].matching]; }

    /// u-vector (P_1(a), ..., P_n(a)) of a path.
    std::vector<Integer> u_vector(const QuiverPath &path) const {
        std::vector<Integer> u;
        for (std::size_t k = 0; k < extremal.size(); ++k) u.emplace_back(evaluate_pm(quiver, path, extremal_matching(k)));
        return u;
    }

    DivClass class_of_path(const QuiverPath &path) const { return toric.class_of(u_vector(path)); }
};

/// Classes of T_ij for a fixed base vertex i, indexed by j.
struct ModuleList {
    std::size_t base = 0;
    std::vector<DivClass> classes;
    std::vector<QuiverPath> paths;
};

inline ModuleList tilting_module(const NccrContext &ctx, std::size_t i) {
    ModuleList ml;
    ml.base = i;
    for (std::size_t j = 0; j < ctx.quiver.vertex_count(); ++j) {
        ml.paths.push_back(find_path(ctx.quiver, i, j));
        ml.classes.push_back(ctx.class_of_path(ml.paths.back()));
    }
    return ml;
}

inline ModuleList tilting_module(const DimerModel &m, std::size_t i) { return tilting_module(NccrContext::build(m), i); }

// ---------------------------------------------------------------------------
// Predicates on class lists. Summands are rank one, so membership in add M
// reduces to membership of classes.

using ClassSet = std::set<std::vector<Integer>>;

inline ClassSet class_set(std::span<const DivClass> cs) {
    ClassSet s;
    for (const auto &c : cs) s.insert(c.coords);
    return s;
}

inline ClassSet dual_set(const ToricData &td, std::span<const DivClass> cs) {
    ClassSet s;
    for (const auto &c : cs) s.insert(td.dual_class(c).coords);
    return s;
}

/// {c_j - c_i : j}: the classes of the summands of Hom_R(M_i, M).
inline ClassSet shift_set(const ToricData &td, std::span<const DivClass> cs, std::size_t i) {
    ClassSet s;
    for (const auto &c : cs) s.insert(td.hom_class(cs[i], c).coords);
    return s;
}

inline bool subset_of(const ClassSet &a, const ClassSet &b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline bool is_basic(std::span<const DivClass> cs) { return class_set(cs).size() == cs.size(); }

inline bool is_generator(const ToricData &td, std::span<const DivClass> cs) {
    return class_set(cs).contains(td.identity().coords);
}

inline bool is_steady(const ToricData &td, std::span<const DivClass> cs) {
    if (!is_generator(td, cs)) return false;
    const ClassSet s = class_set(cs);
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (!subset_of(shift_set(td, cs, i), s)) return false;
    return true;
}

struct SemiSteadyResult {
    bool semi_steady = false;
    std::vector<std::size_t> I;      // Hom(M_i, M) in add M
    std::vector<std::size_t> I_star; // Hom(M_i, M) in add M^*
    std::vector<std::size_t> failing; // in neither

    explicit operator bool() const { return semi_steady; }
};

inline SemiSteadyResult is_semi_steady(const ToricData &td, std::span<const DivClass> cs) {
    SemiSteadyResult r;
    const ClassSet s = class_set(cs);
    const ClassSet sd = dual_set(td, cs);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const ClassSet h = shift_set(td, cs, i);
        const bool in_m = subset_of(h, s);
        const bool in_md = subset_of(h, sd);
        if (in_m) r.I.push_back(i);
        if (in_md) r.I_star.push_back(i);
        if (!in_m && !in_md) r.failing.push_back(i);
    }
    r.semi_steady = is_generator(td, cs) && r.failing.empty();
    return r;
}

/// add End_R(M) == add (M + M^*) at the level of classes.
inline bool end_add_equals(const ToricData &td, std::span<const DivClass> cs) {
    ClassSet all;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const ClassSet h = shift_set(td, cs, i);
        all.insert(h.begin(), h.end());
    }
    ClassSet both = class_set(cs);
    const ClassSet sd = dual_set(td, cs);
    both.insert(sd.begin(), sd.end());
    return all == both;
}

// ---------------------------------------------------------------------------
// Classification

enum class Verdict { Steady, SemiSteadyNotSteady, Neither };

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Steady: return "steady";
    case Verdict::SemiSteadyNotSteady: return "semi-steady (not steady)";
    case Verdict::Neither: return "neither";
    }
    return "?";
}

struct Flags {
    bool generator = false;
    bool basic = false;
    bool splitting = true;
    bool steady = false;
    bool semi_steady = false;

    friend bool operator==(const Flags &, const Flags &) = default;
};

struct CrossCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct Classification {
    Flags flags;
    Verdict verdict = Verdict::Neither;
    std::size_t base = 0;
    ModuleList module;            // at `base`
    std::vector<ModuleList> per_base;
    std::vector<Flags> per_base_flags;
    std::vector<std::size_t> I, I_star;
    bool isoradial = false;
    std::vector<CrossCheck> checks;

    bool all_checks_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CrossCheck &c) { return c.passed; });
    }
};

inline Flags flags_of(const ToricData &td, std::span<const DivClass> cs) {
    Flags f;
    f.generator = is_generator(td, cs);
    f.basic = is_basic(cs);
    f.steady = is_steady(td, cs);
    f.semi_steady = static_cast<bool>(is_semi_steady(td, cs));
    return f;
}

inline Verdict verdict_of(const Flags &f) {
    if (f.steady) return Verdict::Steady;
    if (f.semi_steady) return Verdict::SemiSteadyNotSteady;
    return Verdict::Neither;
}

namespace detail {

inline std::vector<std::vector<Integer>> torsion_elements(const AbelianGroup &g) {
    std::vector<std::vector<Integer>> out{std::vector<Integer>(g.coordinate_count())};
    for (std::size_t t = 0; t < g.torsion.size(); ++t) {
        std::vector<std::vector<Integer>> next;
        for (const auto &e : out)
            for (Integer k = 0; k < g.torsion[t]; ++k) {
                auto x = e;
                x[g.free_rank + t] = k;
                next.push_back(std::move(x));
            }
        out = std::move(next);
    }
    return out;
}

} // namespace detail

/// Classifies the module at `base` and cross-checks the structural results
/// that must hold for every consistent model. Throws CrossCheckFailure when
/// one of them fails (`throw_on_failure`).
inline Classification classify(const NccrContext &ctx, std::size_t base = 0, bool throw_on_failure = true) {
    const ToricData &td = ctx.toric;
    const std::size_t nq = ctx.quiver.vertex_count();
    if (base >= nq) throw Error(ErrorCode::DimensionMismatch, "base vertex out of range");
    Classification c;
    c.base = base;
    for (std::size_t i = 0; i < nq; ++i) {
        c.per_base.push_back(tilting_module(ctx, i));
        c.per_base_flags.push_back(flags_of(td, c.per_base.back().classes));
    }
    c.module = c.per_base[base];
    const auto &cs = c.module.classes;
    c.flags = c.per_base_flags[base];
    c.verdict = verdict_of(c.flags);
    const auto semi = is_semi_steady(td, cs);
    c.I = semi.I;
    c.I_star = semi.I_star;
    c.isoradial = static_cast<bool>(is_isoradial(ctx.model));

    auto check = [&](std::string name, bool ok, std::string detail = {}) {
        c.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    check("identity at base", cs[base] == td.identity());
    check("basic", c.flags.basic);

    bool same = true;
    for (const auto &f : c.per_base_flags) same = same && f == c.flags;
    check("base independence", same);

    // T_ij computed directly agrees with c_j - c_i computed from the base.
    bool additive = true;
    for (std::size_t i = 0; i < nq && additive; ++i)
        additive = class_set(c.per_base[i].classes) == shift_set(td, cs, i);
    check("path additivity", additive);

    if (c.flags.semi_steady) {
        const ClassSet s = class_set(cs);
        const ClassSet sd = dual_set(td, cs);
        bool m_or_dual = true;
        for (const auto &ml : c.per_base) {
            const ClassSet si = class_set(ml.classes);
            m_or_dual = m_or_dual && (si == s || si == sd);
        }
        check("e_i A is M or M^*", m_or_dual);
    }

    const bool self_dual = class_set(cs) == dual_set(td, cs);
    check("steady iff semi-steady and self-dual", c.flags.steady == (c.flags.semi_steady && self_dual));

    if (c.verdict == Verdict::SemiSteadyNotSteady) {
        check("|I| == |I*|", c.I.size() == c.I_star.size(),
              std::to_string(c.I.size()) + " vs " + std::to_string(c.I_star.size()));
        check("|Q0| even", nq % 2 == 0);
        const auto &g = td.class_group;
        check("class group free rank 1", g.free_rank == 1, g.describe());
        check("torsion order |Q0|/2", g.torsion_order() * 2 == nq, g.describe());
        ClassSet from_i;
        for (auto i : c.I) from_i.insert(cs[i].coords);
        const auto tors = detail::torsion_elements(g);
        check("torsion subgroup is {c_i : i in I}", from_i == ClassSet(tors.begin(), tors.end()));
        if (c.isoradial) check("polygon is a parallelogram", is_parallelogram(ctx.polygon.polygon()));
    }

    if (throw_on_failure)
        for (const auto &k : c.checks)
            if (!k.passed)
                throw Error(ErrorCode::CrossCheckFailure, "cross-check failed: " + k.name +
                                                              (k.detail.empty() ? "" : " (" + k.detail + ")"));
    return c;
}

inline Classification classify(const DimerModel &m, std::size_t base = 0) {
    return classify(NccrContext::build(m), base);
}

/// Classes of the opposite model at the face matching `i` equal the duals of
/// the classes at `i`. The color-swapped model's extremal matchings are put
/// back into the original cyclic order (a rotation of its own order).
struct OppositeReport {
    bool ok = false;
    std::size_t rotation = 0; // position of the original first extremal in the swapped order
    std::vector<DivClass> classes;
};

inline OppositeReport opposite_check(const NccrContext &ctx, std::size_t i) {
    const DimerModel swapped = swap_colors(ctx.model);
    const NccrContext sc = NccrContext::build(swapped);
    const std::size_t n = ctx.extremal.size();
    if (sc.extremal.size() != n) throw Error(ErrorCode::CrossCheckFailure, "opposite polygon has different size");

    std::vector<std::size_t> perm(n); // original index k -> swapped index
    for (std::size_t k = 0; k < n; ++k) {
        const auto &edges = ctx.extremal_matching(k).edges;
        auto it = std::find_if(sc.extremal.begin(), sc.extremal.end(),
                               [&](const ExtremalMatching &e) { return sc.pms[e.matching].edges == edges; });
        if (it == sc.extremal.end())
            throw Error(ErrorCode::CrossCheckFailure, "extremal matching missing in the opposite model");
        perm[k] = static_cast<std::size_t>(it - sc.extremal.begin());
    }
    OppositeReport rep;
    rep.rotation = perm[0];

    // a dart from node v in the swapped model is the dart from v with the
    // other color flag in the original; faces on the left agree
    const Dart d0 = ctx.model.faces()[i].boundary.front();
    const std::size_t si = sc.model.left_face(Dart{d0.edge, !d0.from_white});
    for (std::size_t j = 0; j < sc.quiver.vertex_count(); ++j) {
        const QuiverPath p = find_path(sc.quiver, si, j);
        std::vector<Integer> u(n);
        for (std::size_t k = 0; k < n; ++k) u[k] = evaluate_pm(sc.quiver, p, sc.extremal_matching(perm[k]));
        rep.classes.push_back(ctx.toric.class_of(u));
    }
    const auto ml = tilting_module(ctx, i);
    rep.ok = class_set(rep.classes) == dual_set(ctx.toric, ml.classes);
    return rep;
}

} // namespace dimer
