#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "curlkit/catalog.hpp"
#include "curlkit/curl.hpp"
#include "curlkit/flow.hpp"
#include "curlkit/laplace.hpp"
#include "curlkit/parser.hpp"
#include "curlkit/rng.hpp"
#include "curlkit/verify.hpp"

namespace {

using nlohmann::ordered_json;

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> params;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw curlkit::DomainError("bad parameter assignment: " + item);
        params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return params;
}

std::vector<curlkit::Point> load_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw curlkit::DomainError("cannot open points file: " + path);
    nlohmann::json j;
    in >> j;
    std::vector<curlkit::Point> pts;
    for (const auto& row : j) pts.push_back(row.get<curlkit::Point>());
    return pts;
}

curlkit::Point parse_point(const std::string& text) {
    curlkit::Point p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(std::stod(item));
    return p;
}

ordered_json curl_record(const curlkit::CatalogGeometry& geo, const curlkit::CurlResult& res) {
    ordered_json rec;
    rec["point"] = res.point;
    rec["coefficient"] = res.density.coefficient;
    rec["weight"] = res.density.weight.to_string();
    rec["reference"] = curlkit::to_string(res.density.reference);
    rec["geometry"] = geo.id;
    rec["params"] = geo.params;
    return rec;
}

int run_catalog(const std::string& sub, const std::string& id) {
    if (sub == "list") {
        ordered_json out = ordered_json::array();
        for (const std::string& gid : curlkit::catalog_ids()) out.push_back(gid);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << curlkit::catalog_schema(id).dump(2) << "\n";
    return 0;
}

// Inject config-file entries as trailing flags unless already given on the
// command line, so explicit flags always win.
std::vector<std::string> apply_json_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (config_path.empty()) return args;
    std::ifstream in(config_path);
    if (!in) throw curlkit::DomainError("cannot open config file: " + config_path);
    nlohmann::json cfg;
    in >> cfg;
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        const std::string flag = "--" + it.key();
        bool present = false;
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue;
        if (it.value().is_string())
            args.push_back(flag + "=" + it.value().get<std::string>());
        else if (it.value().is_boolean()) {
            if (it.value().get<bool>()) args.push_back(flag);
        } else {
            args.push_back(flag + "=" + it.value().dump());
        }
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contact Riemannian curl toolkit"};
    app.require_subcommand(1);
    std::string config_doc;  // handled by the pre-pass; listed here for --help
    app.add_option("--config", config_doc, "JSON config file mirroring the flags (flags win)");

    // catalog
    auto* catalog = app.add_subcommand("catalog", "list geometries or show one");
    std::string catalog_action = "list";
    std::string catalog_id;
    catalog->add_option("action", catalog_action, "list or show")->required();
    catalog->add_option("id", catalog_id, "geometry id for 'show'");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate the curl over points");
    std::string eval_geometry, eval_params, eval_points_file, eval_out = "json";
    int eval_random = 0;
    unsigned long long eval_seed = 7;
    eval->add_option("--geometry", eval_geometry)->required();
    eval->add_option("--params", eval_params, "a=..,b=..,c=..");
    eval->add_option("--points", eval_points_file, "JSON file with an array of points");
    eval->add_option("--random", eval_random, "sample N random points");
    eval->add_option("--seed", eval_seed);
    eval->add_option("--out", eval_out, "json or csv");

    // subsymbol
    auto* subsymbol = app.add_subcommand("subsymbol", "Laplace-Beltrami subsymbol values");
    std::string sub_geometry, sub_params, sub_lambda = "0";
    int sub_random = 10;
    unsigned long long sub_seed = 7;
    subsymbol->add_option("--geometry", sub_geometry)->required();
    subsymbol->add_option("--params", sub_params);
    subsymbol->add_option("--lambda", sub_lambda, "rational weight p/q");
    subsymbol->add_option("--random", sub_random);
    subsymbol->add_option("--seed", sub_seed);

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string verify_suite = "all";
    unsigned long long verify_seed = 7;
    std::vector<std::string> verify_tols;
    bool verify_details = false;
    verify->add_option("--suite", verify_suite);
    verify->add_option("--seed", verify_seed);
    verify->add_option("--tol", verify_tols, "per-check override name=value")->expected(-1);
    verify->add_flag("--details", verify_details);

    // bundle-check
    auto* bundle = app.add_subcommand("bundle-check", "sphere-bundle curl check");
    std::string bundle_base = "flat";
    int bundle_samples = 50;
    unsigned long long bundle_seed = 7;
    bundle->add_option("--base", bundle_base, "flat, sphere or ellipse");
    bundle->add_option("--samples", bundle_samples);
    bundle->add_option("--seed", bundle_seed);

    // flow
    auto* flow = app.add_subcommand("flow", "integrate a contact flow");
    std::string flow_ham, flow_point = "0,0,0";
    double flow_time = 0.1;
    int flow_steps = 100;
    flow->add_option("--hamiltonian", flow_ham)->required();
    flow->add_option("--time", flow_time);
    flow->add_option("--steps", flow_steps);
    flow->add_option("--point", flow_point);

    std::vector<std::string> args;
    try {
        args = apply_json_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    // CLI11 parses vector arguments in reverse order.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (catalog->parsed()) {
            if (catalog_action == "list") return run_catalog("list", "");
            if (catalog_action == "show") return run_catalog("show", catalog_id);
            std::cerr << "unknown catalog action: " << catalog_action << "\n";
            return 2;
        }

        if (eval->parsed()) {
            curlkit::CatalogGeometry geo =
                curlkit::instantiate(eval_geometry, parse_params(eval_params));
            std::vector<curlkit::Point> pts;
            if (!eval_points_file.empty()) pts = load_points_file(eval_points_file);
            if (eval_random > 0) {
                auto sampled = curlkit::sample_points(geo, eval_random, eval_seed);
                pts.insert(pts.end(), sampled.begin(), sampled.end());
            }
            if (pts.empty()) throw curlkit::DomainError("no points given; use --points or --random");

            std::vector<curlkit::CurlResult> results;
            if (geo.lifted_bundle) {
                for (const auto& p : pts)
                    results.push_back(
                        curlkit::curl_from_metric_jets(geo.metric.components(p, 2), geo.theta, p));
            } else {
                curlkit::ConnectionField lc = curlkit::levi_civita(geo.metric);
                for (const auto& p : pts)
                    results.push_back(curlkit::curl_density(geo.metric, lc, geo.theta, p));
            }

            if (eval_out == "csv") {
                for (const auto& name : geo.chart.names) std::cout << name << ",";
                std::cout << "coefficient\n";
                for (const auto& r : results) {
                    for (double c : r.point) std::cout << c << ",";
                    std::cout << r.density.coefficient << "\n";
                }
            } else {
                ordered_json out = ordered_json::array();
                for (const auto& r : results) out.push_back(curl_record(geo, r));
                std::cout << out.dump(2) << "\n";
            }
            return 0;
        }

        if (subsymbol->parsed()) {
            curlkit::CatalogGeometry geo =
                curlkit::instantiate(sub_geometry, parse_params(sub_params));
            if (geo.lifted_bundle)
                throw curlkit::DomainError("subsymbol needs a Darboux-type chart geometry");
            curlkit::Rational lambda = curlkit::Rational::from_string(sub_lambda);
            auto pts = curlkit::sample_points(geo, sub_random, sub_seed);
            curlkit::ConnectionField lc = curlkit::levi_civita(geo.metric);
            ordered_json out = ordered_json::array();
            for (const auto& p : pts) {
                auto coeffs = curlkit::laplace_coeffs(geo.metric, lambda, p);
                auto sub = curlkit::subsymbol_numeric(coeffs, geo.theta, p);
                auto curl = curlkit::curl_density(geo.metric, lc, geo.theta, p);
                ordered_json rec;
                rec["point"] = p;
                rec["subsymbol"] = sub.coefficient;
                rec["curl"] = curl.density.coefficient;
                rec["residual"] = curlkit::laplace_subsymbol_residual(geo.metric, geo.theta,
                                                                      lambda, p);
                out.push_back(rec);
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (verify->parsed()) {
            curlkit::SuiteOptions opts;
            opts.seed = verify_seed;
            opts.with_details = verify_details;
            for (const std::string& t : verify_tols) {
                auto eq = t.find('=');
                if (eq == std::string::npos)
                    throw curlkit::DomainError("bad tolerance override: " + t);
                opts.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
            }
            ordered_json report = curlkit::suite_report(verify_suite, opts);
            std::cout << report.dump(2) << "\n";
            return report["pass"].get<bool>() ? 0 : 1;
        }

        if (bundle->parsed()) {
            std::string id = "stm-" + bundle_base;
            curlkit::CatalogGeometry geo = curlkit::instantiate(id);
            auto pts = curlkit::sample_points(geo, bundle_samples, bundle_seed);
            double max_abs = 0.0;
            for (const auto& p : pts) {
                auto res =
                    curlkit::curl_from_metric_jets(geo.metric.components(p, 2), geo.theta, p);
                max_abs = std::max(max_abs, std::fabs(res.density.coefficient));
            }
            ordered_json out;
            out["base"] = bundle_base;
            out["samples"] = bundle_samples;
            out["seed"] = bundle_seed;
            out["max_abs_curl"] = max_abs;
            const double tol = bundle_base == "flat" ? 1e-10 : 1e-8;
            out["tolerance"] = tol;
            out["pass"] = max_abs < tol;
            std::cout << out.dump(2) << "\n";
            return max_abs < tol ? 0 : 1;
        }

        if (flow->parsed()) {
            curlkit::DarbouxChart chart;
            chart.ell = 1;
            chart.kappa = curlkit::Rational(1);
            curlkit::Poly ham = curlkit::parse_hamiltonian(flow_ham, 1);
            curlkit::FlowSpec spec{ham, chart, flow_time, flow_steps};
            curlkit::Point p = parse_point(flow_point);
            curlkit::JetVec image = curlkit::contact_flow(spec, p);
            ordered_json out;
            out["hamiltonian"] = curlkit::print_poly(ham, 1);
            out["time"] = flow_time;
            out["steps"] = flow_steps;
            out["point"] = p;
            curlkit::Point q(3);
            for (int a = 0; a < 3; ++a) q[a] = image[a].value();
            out["image"] = q;
            ordered_json jac = ordered_json::array();
            for (int a = 0; a < 3; ++a) {
                ordered_json row = ordered_json::array();
                for (int i = 0; i < 3; ++i) row.push_back(image[a].d(i));
                jac.push_back(row);
            }
            out["jacobian"] = jac;
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
