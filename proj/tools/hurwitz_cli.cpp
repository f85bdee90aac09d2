#include "hurwitz/error.hpp"
#include "hurwitz/expr.hpp"
#include "hurwitz/extension.hpp"
#include "hurwitz/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using namespace hurwitz;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { OK = 0, NEGATIVE = 1, INPUT = 2 };

bool json_out = false;

int emit_report(const ValidationReport& rep)
{
    if (json_out) {
        std::cout << serialize_report(rep);
    } else {
        for (const auto& v : rep.violations) std::cout << v.clause << " " << v.subject << ": " << v.message << "\n";
        std::cout << (rep.ok() ? "valid" : "invalid (" + std::to_string(rep.violations.size()) + " violations)") << "\n";
    }
    return rep.ok() ? OK : NEGATIVE;
}

std::string form_text(const DifferentialForm& w) { return w.is_zero() ? "0" : w.to_string(); }

HurwitzTree load_tree(const std::string& path) { return parse_tree(read_file(path)); }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Differential Hurwitz trees of type Z/p^n"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", json_out, "Emit structured output");

    std::string tree_path, lo_path, hi_path, map_path, target_path, out_path, map_out, rt_path;
    std::string form, field_spec = "2", variant = "fixed-plus", first_pole, edge_id, radius;
    int m_n = 0;
    int max_degree = 0;
    unsigned workers = 1;
    std::uint64_t ceiling = 10'000'000;
    bool split_only = false;

    auto* validate_cmd = app.add_subcommand("validate", "Check the tree conditions of a tree file");
    validate_cmd->add_option("tree", tree_path)->required();

    auto* breaks_cmd = app.add_subcommand("breaks", "Ramification breaks and conductors of a reduction type");
    breaks_cmd->add_option("file", rt_path)->required();

    auto* cartier_cmd = app.add_subcommand("cartier", "Cartier image of a differential form");
    cartier_cmd->add_option("--form", form)->required();
    cartier_cmd->add_option("--field", field_spec, "p or p:m0,...,md");

    auto* solve_cmd = app.add_subcommand("solve-cartier", "Search for a solution of the Cartier problem");
    solve_cmd->add_option("--form", form)->required();
    solve_cmd->add_option("--field", field_spec);
    solve_cmd->add_option("--m-n", m_n, "Target conductor exponent")->required();
    solve_cmd->add_option("--variant", variant)->check(CLI::IsMember({"fixed-plus", "section"}));
    solve_cmd->add_flag("--split-only", split_only);
    solve_cmd->add_option("--first-pole", first_pole);
    solve_cmd->add_option("--ceiling", ceiling);
    solve_cmd->add_option("--workers", workers);

    auto* compat_cmd = app.add_subcommand("compat", "Constant-coefficient compatibility");
    compat_cmd->add_option("tree", tree_path)->required();

    auto* ext_cmd = app.add_subcommand("check-ext", "Check that one tree extends another");
    ext_cmd->add_option("lo", lo_path)->required();
    ext_cmd->add_option("hi", hi_path)->required();
    ext_cmd->add_option("map", map_path)->required();

    auto* extend_cmd = app.add_subcommand("extend", "Construct an extension of a tree");
    extend_cmd->add_option("tree", tree_path)->required();
    extend_cmd->add_option("--target", target_path)->required();
    extend_cmd->add_option("-o,--output", out_path);
    extend_cmd->add_option("--map", map_out);
    extend_cmd->add_option("--max-field-degree", max_degree);
    extend_cmd->add_option("--ceiling", ceiling);
    extend_cmd->add_option("--workers", workers);

    auto* place_cmd = app.add_subcommand("place", "Depth and differential at a rational place");
    place_cmd->add_option("tree", tree_path)->required();
    place_cmd->add_option("--edge", edge_id)->required();
    place_cmd->add_option("--r", radius)->required();

    auto* dot_cmd = app.add_subcommand("dot", "Graphviz rendering");
    dot_cmd->add_option("tree", tree_path)->required();
    dot_cmd->add_option("-o,--output", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? OK : INPUT;
    }

    try {
        if (*validate_cmd) return emit_report(validate(load_tree(tree_path)));

        if (*compat_cmd) {
            const HurwitzTree t = load_tree(tree_path);
            ValidationReport rep = validate(t);
            if (rep.ok()) rep = check_compatibility(t);
            return emit_report(rep);
        }

        if (*ext_cmd) {
            const HurwitzTree lo = load_tree(lo_path);
            const HurwitzTree hi = load_tree(hi_path);
            const VertexMap m = parse_vertex_map(read_file(map_path));
            return emit_report(check_extension(lo, hi, m));
        }

        if (*breaks_cmd) {
            const ReductionType rt = parse_reduction_type(read_file(rt_path));
            const ConductorData cd = conductors(rt);
            if (json_out) {
                ojson o;
                o["breaks"] = cd.breaks;
                o["conductors"] = cd.conductors;
                ojson levels = ojson::array();
                for (std::size_t i = 1; i < cd.breaks.size(); ++i) {
                    ojson l;
                    l["level"] = i + 1;
                    l["minimal"] = static_cast<bool>(cd.minimal[i]);
                    l["excess"] = cd.excess[i];
                    levels.push_back(l);
                }
                o["levels"] = levels;
                std::cout << o.dump(2) << "\n";
            } else {
                auto tuple = [](const std::vector<int>& v) {
                    std::string s = "(";
                    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
                    return s + ")";
                };
                std::cout << tuple(cd.breaks) << "; " << tuple(cd.conductors);
                for (std::size_t i = 1; i < cd.breaks.size(); ++i) {
                    std::cout << "; level " << i + 1;
                    if (cd.minimal[i]) std::cout << " MINIMAL";
                    else std::cout << " GENERAL l=" << cd.excess[i];
                }
                std::cout << "\n";
            }
            return OK;
        }

        if (*cartier_cmd) {
            const FieldPtr F = parse_field_spec(field_spec);
            const DifferentialForm c = cartier(parse_form(F, form));
            if (json_out) {
                ojson o;
                o["form"] = form_text(c);
                std::cout << o.dump(2) << "\n";
            } else {
                std::cout << form_text(c) << "\n";
            }
            return OK;
        }

        if (*solve_cmd) {
            const FieldPtr F = parse_field_spec(field_spec);
            const DifferentialForm w = parse_form(F, form);
            SolverOptions so;
            so.split_only = split_only;
            so.ceiling = ceiling;
            so.workers = workers;
            if (!first_pole.empty()) so.first_pole = parse_element(F, first_pole);
            SolverStats stats;
            const auto sol = solve_cartier(w, m_n, variant == "section" ? CartierVariant::SECTION : CartierVariant::FIXED_PLUS,
                                           so, &stats);
            if (json_out) {
                ojson o;
                o["solution"] = sol ? ojson(form_text(*sol)) : ojson(nullptr);
                o["family_size"] = stats.family_size;
                o["candidates"] = stats.candidates;
                o["solutions"] = stats.solutions;
                std::cout << o.dump(2) << "\n";
            } else {
                std::cout << (sol ? form_text(*sol) : "NONE") << "\n";
            }
            return sol ? OK : NEGATIVE;
        }

        if (*extend_cmd) {
            const HurwitzTree prev = load_tree(tree_path);
            const ExtensionTarget target = parse_target(read_file(target_path), prev.field);
            ExtendOptions eo;
            eo.ceiling = ceiling;
            eo.workers = workers;
            eo.max_field_degree = max_degree;
            const ExtensionResult res = extend_tree(prev, target, eo);
            for (const auto& line : res.log) std::cerr << line << "\n";
            const std::string tree_text = serialize_tree(res.tree);
            if (out_path.empty()) std::cout << tree_text;
            else write_file(out_path, tree_text);
            if (!map_out.empty()) write_file(map_out, serialize_vertex_map(res.map));
            if (res.source.field != prev.field && !out_path.empty())
                write_file(out_path + ".source.json", serialize_tree(res.source));
            return OK;
        }

        if (*place_cmd) {
            const HurwitzTree t = load_tree(tree_path);
            const RationalPlace pl{edge_id, parse_rational(radius)};
            const Rational d = depth_at_place(t, pl);
            const DifferentialForm w = differential_at_place(t, pl);
            if (json_out) {
                ojson o;
                o["edge"] = edge_id;
                o["r"] = to_string(pl.r);
                o["depth"] = to_string(d);
                o["omega"] = form_text(w);
                std::cout << o.dump(2) << "\n";
            } else {
                std::cout << "depth " << to_string(d, false) << "\nomega " << form_text(w) << "\n";
            }
            return OK;
        }

        if (*dot_cmd) {
            const std::string text = to_dot(load_tree(tree_path));
            if (out_path.empty()) std::cout << text;
            else write_file(out_path, text);
            return OK;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::ParseError || e.code() == ErrorCode::FieldMismatch ? INPUT : NEGATIVE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return INPUT;
    }
    return OK;
}
