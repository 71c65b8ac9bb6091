#include "patmix/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "patmix/io.hpp"

namespace patmix {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// inline JSON starts with a brace or bracket; anything else is a file path
std::string inline_or_file(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
    return slurp(arg);
}

int env_cap(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    int parsed = std::atoi(v);
    if (parsed <= 0) throw std::invalid_argument(std::string("bad cap override in ") + name);
    return parsed;
}

// built-in names resolve before file paths
Pattern resolve_pattern(const std::string& name) {
    if (name == "bipartite") return bipartite_pattern();
    if (name == "K53") return k53_pattern();
    if (name == "B53") return b53_pattern();
    if (name.rfind("sts", 0) == 0 && name.size() > 3) {
        int t = std::atoi(name.c_str() + 3);
        if (t > 0) return pattern_from_sts(sts_generate(t));
    }
    return pattern_from_json(slurp(name));
}

PatternFamily resolve_family(const std::string& csv) {
    std::vector<std::string> ids;
    std::vector<Pattern> patterns;
    std::stringstream ss(csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name.empty()) continue;
        ids.push_back(name);
        patterns.push_back(resolve_pattern(name));
    }
    return make_family(std::move(ids), std::move(patterns));
}

std::vector<double> parse_csv_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        double v = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad number: " + item);
        out.push_back(v);
    }
    return out;
}

RGraph resolve_graph(const std::string& arg) {
    std::string text = inline_or_file(arg);
    if (!text.empty() && text.front() == '{') return rgraph_from_json(text);
    return rgraph_from_text(text);
}

struct Sink {
    std::ostream& fallback;
    std::string path;

    void write(const std::string& data) const {
        if (path.empty()) {
            fallback << data;
            if (data.empty() || data.back() != '\n') fallback << '\n';
            return;
        }
        std::ofstream out(path);
        if (!out) throw std::invalid_argument("cannot write file: " + path);
        out << data;
        if (data.empty() || data.back() != '\n') out << '\n';
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pattern blowups, mixing constructions, and feasible-region tools"};
    app.require_subcommand(1);

    std::string pattern_name, family_csv, recipe_arg, graph_arg, maps_arg, input_path;
    std::string ratios_csv, m0_csv, output_path, format = "json";
    std::uint64_t seed = 1;
    int starts = 32, n = 0, s_order = 1, k_steps = 0, t_order = 0, m_vertices = 0;
    int cap_override = 0, threads = 1;

    app.add_option("--threads", threads, "cap on internal parallelism")
        ->check(CLI::PositiveNumber);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--output", output_path, "write result to a file instead of stdout");
        cmd->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_seeded = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "random seed; fixed default for reproducibility");
        cmd->add_option("--starts", starts, "optimizer multi-starts")->check(CLI::PositiveNumber);
    };

    CLI::App* lagrangian = app.add_subcommand("lagrangian", "pattern Lagrangian fixed point");
    lagrangian->add_option("--pattern", pattern_name)->required();
    add_seeded(lagrangian);
    add_common(lagrangian);

    CLI::App* optvec = app.add_subcommand("optvec", "optimal vector report");
    optvec->add_option("--pattern", pattern_name)->required();
    add_seeded(optvec);
    add_common(optvec);

    CLI::App* minimal = app.add_subcommand("minimal", "minimality test with margins");
    minimal->add_option("--pattern", pattern_name)->required();
    add_seeded(minimal);
    add_common(minimal);

    CLI::App* lambda = app.add_subcommand("lambda-n", "exact extremal count");
    lambda->add_option("--pattern", pattern_name, "single-pattern family");
    lambda->add_option("--family", family_csv, "comma-separated pattern names");
    lambda->add_option("--n", n)->required();
    lambda->add_option("--cap", cap_override);
    add_common(lambda);

    CLI::App* build_cmd = app.add_subcommand("build", "materialize an exact-mode recipe");
    build_cmd->add_option("--family", family_csv)->required();
    build_cmd->add_option("--recipe", recipe_arg, "recipe JSON or file")->required();
    build_cmd->add_option("--n", n)->required();
    add_common(build_cmd);

    CLI::App* density = app.add_subcommand("limit-density", "limit edge density of a recipe");
    density->add_option("--family", family_csv)->required();
    density->add_option("--recipe", recipe_arg)->required();
    add_common(density);

    CLI::App* shadow_cmd = app.add_subcommand("shadow", "s-shadow of a graph");
    shadow_cmd->add_option("--graph", graph_arg, "graph JSON/text or file")->required();
    shadow_cmd->add_option("--s", s_order);
    add_common(shadow_cmd);

    CLI::App* subcon = app.add_subcommand("is-subconstruction", "forbidden-family membership");
    subcon->add_option("--graph", graph_arg)->required();
    subcon->add_option("--family", family_csv)->required();
    subcon->add_option("--cap", cap_override);
    add_common(subcon);

    CLI::App* forbidden = app.add_subcommand("forbidden-family", "enumerate F_M up to isomorphism");
    forbidden->add_option("--family", family_csv)->required();
    forbidden->add_option("--m", m_vertices)->required();
    forbidden->add_option("--cap", cap_override);
    add_common(forbidden);

    CLI::App* shadow_limit = app.add_subcommand("shadow-limit", "limit shadow density of a recipe");
    shadow_limit->add_option("--family", family_csv)->required();
    shadow_limit->add_option("--recipe", recipe_arg)->required();
    add_common(shadow_limit);

    CLI::App* ifs = app.add_subcommand("ifs", "affine shadow maps of a family");
    ifs->add_option("--family", family_csv)->required();
    add_seeded(ifs);
    add_common(ifs);

    CLI::App* iterate = app.add_subcommand("iterate-m", "iterate the point set under the maps");
    iterate->add_option("--maps", maps_arg, "maps JSON or file");
    iterate->add_option("--family", family_csv, "derive maps from a family");
    iterate->add_option("--m0", m0_csv, "starting points; defaults to the fixed points");
    iterate->add_option("--k", k_steps)->required();
    add_seeded(iterate);
    add_common(iterate);

    CLI::App* hausdorff = app.add_subcommand("hausdorff", "Moran-equation dimension");
    hausdorff->add_option("--ratios", ratios_csv)->required();
    add_common(hausdorff);

    CLI::App* sts_gen = app.add_subcommand("sts-gen", "generate a Steiner triple system");
    sts_gen->add_option("--t", t_order)->required();
    add_common(sts_gen);

    CLI::App* sts_check = app.add_subcommand("sts-check", "validate a design file");
    sts_check->add_option("--input", input_path)->required();
    add_common(sts_check);

    CLI::App* fp = app.add_subcommand("fingerprint", "balanced-blowup fingerprint F(D)");
    fp->add_option("--t", t_order, "fingerprint the generated design of this order");
    fp->add_option("--input", input_path, "fingerprint a design file");
    fp->add_option("--cap", cap_override);
    add_common(fp);

    std::vector<const char*> argv;
    argv.push_back("patmix");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    Sink sink{out, output_path};
    try {
        if (*lagrangian || *optvec) {
            OptimalVectorReport rep =
                pattern_lagrangian(resolve_pattern(pattern_name), pattern_name, seed, starts);
            sink.write(report_to_json(rep));
        } else if (*minimal) {
            MinimalityReport rep = is_minimal(resolve_pattern(pattern_name), 1e-6, seed, starts);
            std::ostringstream os;
            os << "{\"pattern\":\"" << pattern_name << "\",\"minimal\":"
               << (rep.minimal ? "true" : "false") << ",\"margins\":[";
            for (std::size_t i = 0; i < rep.margins.size(); ++i)
                os << (i ? "," : "") << format12(rep.margins[i]);
            os << "]}";
            sink.write(os.str());
        } else if (*lambda) {
            if (family_csv.empty() == pattern_name.empty())
                throw std::invalid_argument("give exactly one of --pattern and --family");
            PatternFamily fam = family_csv.empty()
                                    ? make_family({pattern_name}, {resolve_pattern(pattern_name)})
                                    : resolve_family(family_csv);
            int cap = cap_override > 0 ? cap_override : env_cap("PATMIX_LAMBDA_CAP", 200);
            MixingDP dp(fam, cap);
            if (format == "csv") {
                std::ostringstream os;
                os << "n,Lambda,density\n";
                for (int i = 0; i <= n; ++i) {
                    os << i << ',' << dp.lambda(i) << ',';
                    os << (i < fam.r ? "0"
                                     : format12(static_cast<double>(dp.lambda(i)) /
                                                static_cast<double>(binom(i, fam.r))));
                    os << '\n';
                }
                sink.write(os.str());
            } else {
                std::ostringstream os;
                double dens = n >= fam.r ? static_cast<double>(dp.lambda(n)) /
                                               static_cast<double>(binom(n, fam.r))
                                         : 0.0;
                os << "{\"n\":" << n << ",\"lambda\":" << dp.lambda(n)
                   << ",\"density\":" << format12(dens)
                   << ",\"witness\":" << recipe_to_json(dp.witness(n)) << "}";
                sink.write(os.str());
            }
        } else if (*build_cmd) {
            PatternFamily fam = resolve_family(family_csv);
            RecipeTree recipe = recipe_from_json(inline_or_file(recipe_arg));
            BuildResult res = build(fam, recipe, n);
            if (format == "csv") {
                sink.write(rgraph_to_text(res.graph));
            } else {
                std::ostringstream os;
                os << "{\"graph\":" << rgraph_to_json(res.graph)
                   << ",\"edge_count\":" << res.edge_count << "}";
                sink.write(os.str());
            }
        } else if (*density) {
            PatternFamily fam = resolve_family(family_csv);
            RecipeTree recipe = recipe_from_json(inline_or_file(recipe_arg));
            sink.write("{\"density\":" + format12(limit_density(fam, recipe)) + "}");
        } else if (*shadow_cmd) {
            sink.write(rgraph_to_json(shadow(resolve_graph(graph_arg), s_order)));
        } else if (*subcon) {
            PatternFamily fam = resolve_family(family_csv);
            int cap = cap_override > 0 ? cap_override : env_cap("PATMIX_SUBCONSTRUCTION_CAP", 8);
            bool result = is_subconstruction(resolve_graph(graph_arg), fam, cap);
            sink.write(std::string("{\"subconstruction\":") + (result ? "true" : "false") + "}");
        } else if (*forbidden) {
            PatternFamily fam = resolve_family(family_csv);
            int cap = cap_override > 0 ? cap_override : env_cap("PATMIX_FORBIDDEN_CAP", 6);
            std::vector<RGraph> graphs = forbidden_family(fam, m_vertices, cap);
            std::ostringstream os;
            os << "{\"count\":" << graphs.size() << ",\"graphs\":[";
            for (std::size_t i = 0; i < graphs.size(); ++i)
                os << (i ? "," : "") << rgraph_to_json(graphs[i]);
            os << "]}";
            sink.write(os.str());
        } else if (*shadow_limit) {
            PatternFamily fam = resolve_family(family_csv);
            RecipeTree recipe = recipe_from_json(inline_or_file(recipe_arg));
            sink.write("{\"shadow_density\":" + format12(limit_shadow_density(fam, recipe)) +
                       "}");
        } else if (*ifs) {
            sink.write(maps_to_json(ifs_maps(resolve_family(family_csv), seed, starts)));
        } else if (*iterate) {
            std::vector<AffineMap> maps;
            if (!maps_arg.empty())
                maps = maps_from_json(inline_or_file(maps_arg));
            else if (!family_csv.empty())
                maps = ifs_maps(resolve_family(family_csv), seed, starts);
            else
                throw std::invalid_argument("give --maps or --family");
            std::vector<double> m0;
            if (!m0_csv.empty())
                m0 = parse_csv_doubles(m0_csv);
            else
                for (const AffineMap& m : maps) m0.push_back(m.fixed_point());
            std::vector<double> points = iterate_M(maps, m0, k_steps);
            sink.write(format == "csv" ? points_to_csv(points) : points_to_json(points));
        } else if (*hausdorff) {
            sink.write(format12(hausdorff_dimension(parse_csv_doubles(ratios_csv))));
        } else if (*sts_gen) {
            sink.write(sts_to_text(sts_generate(t_order)));
        } else if (*sts_check) {
            STS d = sts_from_text(slurp(input_path));
            STSValidation v = sts_validate(d);
            std::ostringstream os;
            os << "{\"t\":" << d.t << ",\"triples\":" << d.triples.size()
               << ",\"valid\":" << (v.valid ? "true" : "false");
            if (!v.valid)
                os << ",\"pair\":[" << v.pair[0] + 1 << ',' << v.pair[1] + 1
                   << "],\"coverage\":" << v.coverage;
            os << "}";
            sink.write(os.str());
        } else if (*fp) {
            if ((t_order > 0) == !input_path.empty())
                throw std::invalid_argument("give exactly one of --t and --input");
            STS d = t_order > 0 ? sts_generate(t_order) : sts_from_text(slurp(input_path));
            int cap = cap_override > 0 ? cap_override : env_cap("PATMIX_FINGERPRINT_CAP", 19);
            sink.write(fingerprint_to_json(fingerprint(d, cap)));
        }
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        // domain errors, malformed JSON, missing fields, bad numbers
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace patmix
