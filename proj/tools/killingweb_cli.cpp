#include "killingweb/json_io.hpp"
#include "killingweb/parser.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    json j;
    in >> j;
    return j;
}

std::map<std::string, kw::Rational> parse_consts(const std::vector<std::string>& defs) {
    std::map<std::string, kw::Rational> out;
    for (const auto& d : defs) {
        auto eq = d.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--const expects name=p/q, got '" + d + "'");
        out[d.substr(0, eq)] = kw::Rational::from_string(d.substr(eq + 1));
    }
    return out;
}

void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        // Text rendering: a compact human-readable projection of the JSON.
        std::cout << j.dump(2) << "\n";
    }
}

void print_webs_atlas(const std::string& format) {
    json atlas = json::array();
    auto row = [&](const char* web, const char* group, const char* signature) {
        atlas.push_back({{"web", web}, {"group", group}, {"signature", signature}});
    };
    row("CARTESIAN", "translational", "constant tensor; planar Delta1 = Delta2 = 0");
    row("CIRCULAR_CYLINDRICAL", "translational",
        "planar Delta1 != 0, Delta2 = 0 (axial Delta1 = Delta2 = 0)");
    row("PARABOLIC_CYLINDRICAL", "translational", "planar Delta1 = 0, Delta2 != 0");
    row("ELLIPTIC_HYPERBOLIC", "translational", "planar Delta1 != 0, Delta2 != 0");
    row("SPHERICAL", "rotational", "axial Delta1 != 0, Delta2 = 0");
    row("PROLATE_SPHEROIDAL", "rotational", "axial Delta1 != 0, Delta2 > 0");
    row("OBLATE_SPHEROIDAL", "rotational", "axial Delta1 != 0, Delta2 < 0");
    row("PARABOLIC", "rotational", "axial Delta1 = 0, Delta2 != 0");
    row("CONICAL", "asymmetric", "(Xi1,Xi2) != 0, Xi3 != 0, Xi4 = Xi5 = Xi6 = 0");
    row("PARABOLOIDAL", "asymmetric", "Xi1 = Xi2 = 0");
    row("ELLIPSOIDAL", "asymmetric",
        "(Xi1,Xi2) != 0 with Xi3 = 0, or Xi3 != 0 and (Xi4,Xi5,Xi6) != 0");
    if (format == "json") {
        emit({{"schema", kw::kSchemaTag}, {"webs", atlas}}, format);
    } else {
        for (const auto& r : atlas)
            std::cout << r["web"].get<std::string>() << "  [" << r["group"].get<std::string>()
                      << "]  " << r["signature"].get<std::string>() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariant classification of orthogonal coordinate webs in Euclidean 3-space"};
    app.require_subcommand(1);

    std::string input, web_label, potential, emit_dir, format = "json";
    std::vector<std::string> const_defs;
    double tau_class = 1e-9, tau_canon = 1e-8;
    int combo_range = 2;
    bool kv_mode = false;

    app.add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    auto* classify = app.add_subcommand("classify-kt", "Classify a Killing tensor's web");
    classify->add_option("--input", input, "KTParams JSON file")->required();
    classify->add_option("--tau-class", tau_class);

    auto* inv = app.add_subcommand("invariants", "Print all applicable invariant vectors");
    inv->add_option("--input", input, "KTParams (or KVParams with --kv) JSON file")->required();
    inv->add_flag("--kv", kv_mode, "input is a Killing vector");

    auto* canon = app.add_subcommand("canonical", "Canonical-form chart of an aligned tensor");
    canon->add_option("--input", input)->required();
    canon->add_option("--web", web_label)->required();
    canon->add_option("--tau-canon", tau_canon);

    auto* sep = app.add_subcommand("separable", "Find separable webs of a potential");
    sep->add_option("--potential", potential)->required();
    sep->add_option("--const", const_defs, "named constant binding name=p/q");
    sep->add_option("--combo-range", combo_range);
    sep->add_option("--emit-charts", emit_dir, "write one chart JSON per discovery");
    sep->add_option("--tau-class", tau_class);
    sep->add_option("--tau-canon", tau_canon);

    auto* webs = app.add_subcommand("webs", "Print the atlas of the eleven webs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tau_class <= 0 || tau_canon <= 0)
            throw std::invalid_argument("tolerances must be positive");
        if (combo_range < 0) throw std::invalid_argument("--combo-range must be >= 0");

        if (classify->parsed()) {
            kw::KTParams k = kw::kt_from_json(load_json(input));
            auto report = kw::classify_web(k, tau_class);
            emit(kw::report_to_json(report), format);
        } else if (inv->parsed()) {
            json j = load_json(input);
            emit(kv_mode ? kw::kv_invariants_to_json(kw::kv_from_json(j))
                         : kw::invariants_to_json(kw::kt_from_json(j)),
                 format);
        } else if (canon->parsed()) {
            auto web = kw::web_from_name(web_label);
            if (!web) throw std::invalid_argument("unknown web label: " + web_label);
            kw::KTParams k = kw::kt_from_json(load_json(input));
            auto chart = kw::to_canonical(kw::to_double(k), *web, tau_canon);
            emit(kw::chart_to_json(chart), format);
        } else if (sep->parsed()) {
            kw::RatFun v = kw::parse_potential(potential, parse_consts(const_defs));
            kw::CombinationPolicy policy;
            policy.range = combo_range;
            auto report = kw::find_separable_webs(v, policy, tau_class, tau_canon);
            if (!emit_dir.empty()) {
                std::filesystem::create_directories(emit_dir);
                size_t n = 0;
                for (const auto& d : report.ckts) {
                    std::ofstream out(emit_dir + "/chart_" + std::to_string(n++) + "_" +
                                      kw::web_name(d.chart.web) + ".json");
                    out << kw::chart_to_json(d.chart).dump(2) << "\n";
                }
            }
            if (format == "text") {
                std::cout << "compatible space dimension: " << report.space.dimension() << "\n";
                std::cout << "combinations tried: " << report.combinations_tried << "\n";
                std::cout << "distinct webs:";
                for (auto w : report.distinct_webs) std::cout << " " << kw::web_name(w);
                std::cout << "\n";
                for (const auto& d : report.ckts) {
                    std::cout << "- " << kw::web_name(d.chart.web) << " (coefficients";
                    for (const auto& c : d.coefficients) std::cout << " " << c.to_string();
                    std::cout << ")\n";
                }
            } else {
                emit(kw::separability_to_json(report), format);
            }
        } else if (webs->parsed()) {
            print_webs_atlas(format);
        }
    } catch (const kw::PotentialParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed input JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
