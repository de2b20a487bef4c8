#pragma once

#include "dimer/dimer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace dimer::cli {

/// Exit codes: 0 success, 1 a checked property is false, 2 bad input or
/// usage, 3 an internal cross-check failed.
struct CommandResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

namespace detail {

inline DimerModel load(const std::string &path, std::istream &in) {
    if (path == "-") return parse_model(read_text(in));
    return load_model(path);
}

inline std::vector<std::int64_t> parse_ints(std::string text) {
    std::replace(text.begin(), text.end(), ',', ' ');
    std::replace(text.begin(), text.end(), ';', ' ');
    std::istringstream is(text);
    std::vector<std::int64_t> out;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception &) {
            throw Error(ErrorCode::ParseError, "not an integer: " + tok);
        }
    }
    return out;
}

inline std::vector<Vec2> parse_points(const std::string &text) {
    const auto v = parse_ints(text);
    if (v.size() % 2 != 0) throw Error(ErrorCode::ParseError, "points need an even number of coordinates");
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < v.size(); i += 2) out.push_back({v[i], v[i + 1]});
    return out;
}

inline IntMatrix parse_matrix(const std::string &text) {
    std::vector<std::vector<std::int64_t>> rows;
    std::istringstream is(text);
    std::string row;
    while (std::getline(is, row, ';')) {
        auto r = parse_ints(row);
        if (!r.empty()) rows.push_back(std::move(r));
    }
    if (rows.empty()) throw Error(ErrorCode::ParseError, "empty matrix");
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw Error(ErrorCode::ParseError, "ragged matrix");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

inline Json vec_json(Vec2 v) { return Json::array({v.x, v.y}); }

inline Json ints_json(std::span<const Integer> v) {
    Json j = Json::array();
    for (const auto &x : v) j.push_back(static_cast<long long>(x));
    return j;
}

inline std::string ints_text(std::span<const Integer> v) { return to_string(v); }

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

inline Json group_json(const AbelianGroup &g) {
    Json t = Json::array();
    for (const auto &d : g.torsion) t.push_back(static_cast<long long>(d));
    return {{"free_rank", g.free_rank}, {"torsion", t}, {"description", g.describe()}};
}

inline std::string matching_text(const DimerModel &m, const PerfectMatching &pm) {
    std::string s = "{";
    for (std::size_t k = 0; k < pm.edges.size(); ++k) s += (k ? "," : "") + m.edges()[pm.edges[k]].id;
    return s + "}";
}

inline Json matching_json(const DimerModel &m, const PerfectMatching &pm) {
    Json j = Json::array();
    for (auto e : pm.edges) j.push_back(m.edges()[e].id);
    return j;
}

} // namespace detail

/// Runs one command line (without the program name).
inline CommandResult run(const std::vector<std::string> &args, std::istream &in = std::cin) {
    std::ostringstream out, err;
    CommandResult result;

    CLI::App app{"Dimer models on the torus: consistency, perfect matchings, class groups and NCCR classification",
                 "dimer"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    std::string file;
    auto add_file = [&](CLI::App *sub) { sub->add_option("model", file, "dimer model JSON file, or - for stdin")->required(); };

    std::function<void()> action;

    auto *validate_cmd = app.add_subcommand("validate", "validate a dimer model");
    add_file(validate_cmd);
    validate_cmd->callback([&] {
        action = [&] {
            const auto m = detail::load(file, in);
            if (json) {
                out << Json{{"valid", true},
                            {"nodes", m.node_count()},
                            {"edges", m.edge_count()},
                            {"faces", m.face_count()},
                            {"euler_characteristic", m.euler_characteristic()}}
                           .dump(2)
                    << "\n";
            } else {
                out << "valid: " << m.node_count() << " nodes, " << m.edge_count() << " edges, " << m.face_count()
                    << " faces, euler characteristic " << m.euler_characteristic() << "\n";
            }
        };
    });

    bool want_cons = false, want_prop = false, want_iso = false;
    auto *check_cmd = app.add_subcommand("check", "consistency, proper ordering and isoradiality");
    add_file(check_cmd);
    check_cmd->add_flag("--consistency", want_cons);
    check_cmd->add_flag("--properly-ordered", want_prop);
    check_cmd->add_flag("--isoradial", want_iso);
    check_cmd->callback([&] {
        action = [&] {
            const auto m = detail::load(file, in);
            if (!want_cons && !want_prop && !want_iso) want_cons = want_prop = want_iso = true;
            const auto report = lift_report(m);
            Json j = Json::object();
            bool all = true;
            auto emit = [&](const char *name, const CheckResult &r) {
                all = all && r.ok;
                if (json) {
                    j[name] = {{"value", r.ok}, {"condition", r.condition}, {"detail", r.detail}};
                } else {
                    out << name << ": " << detail::bool_text(r.ok);
                    if (!r.ok) out << " (condition " << r.condition << ": " << r.detail << ")";
                    out << "\n";
                }
            };
            if (want_cons) emit("consistent", is_consistent(m, report));
            if (want_prop) emit("properly_ordered", is_properly_ordered(m, report));
            if (want_iso) emit("isoradial", is_isoradial(m, report));
            if (json) out << j.dump(2) << "\n";
            result.exit_code = all ? 0 : 1;
        };
    });

    auto *zz_cmd = app.add_subcommand("zigzags", "list zigzag paths and slopes");
    add_file(zz_cmd);
    zz_cmd->callback([&] {
        action = [&] {
            const auto m = detail::load(file, in);
            const auto zs = extract_zigzags(m);
            Json j = Json::array();
            for (const auto &z : zs) {
                Json edges = Json::array();
                std::string text;
                for (const auto &u : z.uses) {
                    edges.push_back(m.edges()[u.edge].id);
                    text += " " + m.edges()[u.edge].id;
                }
                if (json)
                    j.push_back({{"id", z.id}, {"slope", detail::vec_json(z.slope)}, {"edges", edges}});
                else
                    out << z.id << " slope " << to_string(z.slope) << ":" << text << "\n";
            }
            if (json) out << j.dump(2) << "\n";
        };
    });

    bool list_pms = false;
    auto *pms_cmd = app.add_subcommand("pms", "enumerate perfect matchings");
    add_file(pms_cmd);
    pms_cmd->add_flag("--list", list_pms, "print every matching");
    pms_cmd->callback([&] {
        action = [&] {
            const auto m = detail::load(file, in);
            const auto pms = enumerate_pms(m);
            if (json) {
                Json j{{"count", pms.size()}};
                if (list_pms) {
                    j["matchings"] = Json::array();
                    for (const auto &pm : pms) j["matchings"].push_back(detail::matching_json(m, pm));
                }
                out << j.dump(2) << "\n";
            } else {
                out << "perfect matchings: " << pms.size() << "\n";
                if (list_pms)
                    for (std::size_t k = 0; k < pms.size(); ++k)
                        out << "P" << k << " " << detail::matching_text(m, pms[k]) << "\n";
            }
            result.exit_code = pms.empty() ? 1 : 0;
        };
    });

    auto *poly_cmd = app.add_subcommand("polygon", "perfect matching polygon");
    add_file(poly_cmd);
    poly_cmd->callback([&] {
        action = [&] {
            const auto m = detail::load(file, in);
            const auto pms = enumerate_pms(m);
            const auto poly = pm_polygon(m, pms);
            const auto ext = poly.degenerate() ? std::vector<ExtremalMatching>{} : extremal_pms(poly);
            if (json) {
                Json pts = Json::array();
                for (const auto &[p, at] : poly.matchings_at) pts.push_back({{"point", detail::vec_json(p)}, {"multiplicity", at.size()}});
                Json hull = Json::array();
                for (Vec2 v : poly.hull) hull.push_back(detail::vec_json(v));
                Json ex = Json::array();
                for (const auto &e : ext)
                    ex.push_back({{"vertex", detail::vec_json(e.vertex)}, {"matching", detail::matching_json(m, pms[e.matching])}});
                out << Json{{"base", detail::matching_json(m, pms[poly.base])},
                            {"total", poly.total()},
                            {"points", pts},
                            {"hull", hull},
                            {"extremal", ex}}
                           .dump(2)
                    << "\n";
            } else {
                out << "base matching: " << detail::matching_text(m, pms[poly.base]) << "\n";
                out << "points (multiplicity):";
                for (const auto &[p, at] : poly.matchings_at) out << " " << to_string(p) << "x" << at.size();
                out << "\nhull:";
                for (Vec2 v : poly.hull) out << " " << to_string(v);
                out << "\n";
                for (std::size_t k = 0; k < ext.size(); ++k)
                    out << "extremal P" << k + 1 << " at " << to_string(ext[k].vertex) << ": "
                        << detail::matching_text(m, pms[ext[k].matching]) << "\n";
            }
            result.exit_code = poly.degenerate() ? 1 : 0;
        };
    });

    bool quiver_dot = false;
    auto *quiver_cmd = app.add_subcommand("quiver", "dual quiver with potential");
    add_file(quiver_cmd);
    quiver_cmd->add_flag("--dot", quiver_dot, "emit Graphviz");
    quiver_cmd->callback([&] {
        action = [&] {
            const auto m = detail::load(file, in);
            const auto [q, w] = dualize(m);
            auto cycle_text = [&](const std::vector<std::size_t> &c) {
                std::string s;
                for (auto a : c) s += (s.empty() ? "" : " ") + q.arrows[a].id;
                return s;
            };
            if (quiver_dot) {
                out << to_dot(q);
            } else if (json) {
                Json arrows = Json::array();
                for (const auto &a : q.arrows)
                    arrows.push_back({{"id", a.id},
                                      {"tail", q.vertices[a.tail]},
                                      {"head", q.vertices[a.head]},
                                      {"offset", detail::vec_json(a.offset)}});
                Json plus = Json::array(), minus = Json::array();
                for (const auto &c : w.plus_cycles) {
                    Json cj = Json::array();
                    for (auto a : c) cj.push_back(q.arrows[a].id);
                    plus.push_back(cj);
                }
                for (const auto &c : w.minus_cycles) {
                    Json cj = Json::array();
                    for (auto a : c) cj.push_back(q.arrows[a].id);
                    minus.push_back(cj);
                }
                out << Json{{"vertices", q.vertices}, {"arrows", arrows}, {"potential", {{"plus", plus}, {"minus", minus}}}}
                           .dump(2)
                    << "\n";
            } else {
                out << "vertices:";
                for (const auto &v : q.vertices) out << " " << v;
                out << "\narrows:\n";
                for (const auto &a : q.arrows)
                    out << "  " << a.id << ": " << q.vertices[a.tail] << " -> " << q.vertices[a.head] << " offset "
                        << to_string(a.offset) << "\n";
                out << "potential:\n";
                for (const auto &c : w.plus_cycles) out << "  + " << cycle_text(c) << "\n";
                for (const auto &c : w.minus_cycles) out << "  - " << cycle_text(c) << "\n";
            }
        };
    });

    std::string polygon_text, matrix_text;
    std::vector<std::string> u_texts;
    auto *cl_cmd = app.add_subcommand("clgroup", "divisor class group of a toric diagram or a lambda matrix");
    auto *opt_poly = cl_cmd->add_option("--polygon", polygon_text, "vertices \"x1,y1 x2,y2 ...\"");
    auto *opt_mat = cl_cmd->add_option("--matrix", matrix_text, "rows separated by ';'");
    opt_poly->excludes(opt_mat);
    cl_cmd->add_option("--u", u_texts, "u-vector to project, \"a,b,c,...\" (repeatable)");
    cl_cmd->callback([&] {
        action = [&] {
            AbelianGroup g;
            Json j = Json::object();
            if (!polygon_text.empty()) {
                const auto poly = LatticePolygon::hull_of(detail::parse_points(polygon_text));
                const auto td = ToricData::from_polygon(poly);
                g = td.class_group;
                Json rays = Json::array();
                for (const auto &r : td.rays) rays.push_back({r[0], r[1], r[2]});
                j["rays"] = rays;
                j["gorenstein"] = td.is_gorenstein();
                if (!json) {
                    out << "rays:";
                    for (const auto &r : td.rays) out << " (" << r[0] << "," << r[1] << "," << r[2] << ")";
                    out << "\ngorenstein: " << detail::bool_text(td.is_gorenstein()) << "\n";
                }
            } else if (!matrix_text.empty()) {
                g = cokernel(detail::parse_matrix(matrix_text));
            } else {
                throw Error(ErrorCode::ParseError, "clgroup needs --polygon or --matrix");
            }
            j["class_group"] = detail::group_json(g);
            if (!json) out << "Cl: " << g.describe() << "\n";
            Json proj = Json::array();
            for (const auto &t : u_texts) {
                const auto raw = detail::parse_ints(t);
                const std::vector<Integer> u(raw.begin(), raw.end());
                const auto c = g.canonical(u);
                proj.push_back({{"u", detail::ints_json(u)}, {"class", detail::ints_json(c)}});
                if (!json) out << "class of " << detail::ints_text(u) << ": " << detail::ints_text(c) << "\n";
            }
            if (!u_texts.empty()) j["projections"] = proj;
            if (json) out << j.dump(2) << "\n";
        };
    });

    std::size_t vertex = 0;
    auto *classify_cmd = app.add_subcommand("classify", "classify the NCCR given by a consistent dimer model");
    add_file(classify_cmd);
    classify_cmd->add_option("--vertex", vertex, "base vertex (quiver vertex index)");
    classify_cmd->callback([&] {
        action = [&] {
            const auto m = detail::load(file, in);
            const auto ctx = NccrContext::build(m);
            const auto c = classify(ctx, vertex);
            const auto &td = ctx.toric;
            if (json) {
                Json classes = Json::array();
                for (std::size_t j = 0; j < c.module.classes.size(); ++j)
                    classes.push_back({{"vertex", ctx.quiver.vertices[j]},
                                       {"u", detail::ints_json(c.module.classes[j].rep)},
                                       {"class", detail::ints_json(c.module.classes[j].coords)}});
                Json checks = Json::array();
                for (const auto &k : c.checks) checks.push_back({{"name", k.name}, {"passed", k.passed}});
                out << Json{{"verdict", std::string(to_string(c.verdict))},
                            {"base", ctx.quiver.vertices[vertex]},
                            {"class_group", detail::group_json(td.class_group)},
                            {"flags",
                             {{"generator", c.flags.generator},
                              {"basic", c.flags.basic},
                              {"splitting", c.flags.splitting},
                              {"steady", c.flags.steady},
                              {"semi_steady", c.flags.semi_steady}}},
                            {"classes", classes},
                            {"I", c.I},
                            {"I_star", c.I_star},
                            {"isoradial", c.isoradial},
                            {"cross_checks", checks}}
                           .dump(2)
                    << "\n";
            } else {
                out << "verdict: " << to_string(c.verdict) << "\n";
                out << "class group: " << td.class_group.describe() << "\n";
                out << "base vertex: " << ctx.quiver.vertices[vertex] << "\n";
                for (std::size_t j = 0; j < c.module.classes.size(); ++j)
                    out << "  T(" << ctx.quiver.vertices[vertex] << "," << ctx.quiver.vertices[j]
                        << ") = T" << detail::ints_text(c.module.classes[j].rep) << "  class "
                        << detail::ints_text(c.module.classes[j].coords) << "\n";
                out << "flags: generator=" << detail::bool_text(c.flags.generator)
                    << " basic=" << detail::bool_text(c.flags.basic) << " steady=" << detail::bool_text(c.flags.steady)
                    << " semi_steady=" << detail::bool_text(c.flags.semi_steady) << "\n";
                if (c.flags.semi_steady) {
                    out << "I:";
                    for (auto i : c.I) out << " " << ctx.quiver.vertices[i];
                    out << "\nI*:";
                    for (auto i : c.I_star) out << " " << ctx.quiver.vertices[i];
                    out << "\n";
                }
                out << "isoradial: " << detail::bool_text(c.isoradial) << "\n";
                for (const auto &k : c.checks) out << "check " << k.name << ": " << (k.passed ? "ok" : "FAILED") << "\n";
            }
        };
    });

    std::string kind, lattice_text, hv_polygon;
    auto *build_cmd = app.add_subcommand("build", "generate a regular dimer model");
    build_cmd->add_option("kind", kind, "hex | square | hv")->required()->check(CLI::IsMember({"hex", "square", "hv"}));
    build_cmd->add_option("--lattice", lattice_text, "basis \"a b c d\" of the quotient lattice");
    build_cmd->add_option("--polygon", hv_polygon, "parallelogram vertices \"x1,y1 x2,y2 ...\"");
    build_cmd->callback([&] {
        action = [&] {
            DimerModel m;
            if (kind == "hv") {
                if (hv_polygon.empty()) throw Error(ErrorCode::ParseError, "build hv needs --polygon");
                m = hanany_vegh_parallelogram(LatticePolygon::hull_of(detail::parse_points(hv_polygon))).model;
            } else {
                const auto v = detail::parse_ints(lattice_text);
                if (v.size() != 4) throw Error(ErrorCode::ParseError, "--lattice needs four integers");
                const QuotientLattice q{{v[0], v[1]}, {v[2], v[3]}};
                m = kind == "hex" ? build_hexagonal(q) : build_square(q);
            }
            out << to_json(m).dump(1) << "\n";
        };
    });

    std::string format = "json";
    auto *export_cmd = app.add_subcommand("export", "export a model");
    add_file(export_cmd);
    export_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "dot", "tikz", "quiver-dot"}));
    export_cmd->callback([&] {
        action = [&] {
            const auto m = detail::load(file, in);
            if (format == "json")
                out << to_json(m).dump(1) << "\n";
            else if (format == "dot")
                out << to_dot(m);
            else if (format == "tikz")
                out << to_tikz(m);
            else
                out << to_dot(dualize(m).first);
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        result.exit_code = code == 0 ? 0 : 2;
        result.out = out.str();
        result.err = err.str();
        return result;
    }

    try {
        if (action) action();
    } catch (const Error &e) {
        switch (e.code()) {
        case ErrorCode::CrossCheckFailure:
        case ErrorCode::SearchExhausted: result.exit_code = 3; break;
        case ErrorCode::InconsistentModel:
        case ErrorCode::NonUniqueExtremal: result.exit_code = 1; break;
        default: result.exit_code = 2; break;
        }
        err << "error: " << e.what() << "\n";
    }
    result.out = out.str();
    result.err = err.str();
    return result;
}

} // namespace dimer::cli
