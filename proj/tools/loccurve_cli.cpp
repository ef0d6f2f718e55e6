// Command-line front end: fit, derivs, eoc, serve.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "loccurve/loccurve.hpp"
#include "loccurve/service.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_usage = 2;

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
    if (!path) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw input_error("cannot write '" + *path + "'");
    out << text;
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct curve_inputs {
    std::string data;
    std::optional<std::string> knots;
    std::optional<std::string> placement;
};

/// `data` is a CSV/JSON path or fixture:NAME; `knots` a JSON path or preset:NAME.
loccurve::curve_request load_request(const curve_inputs& in) {
    using namespace loccurve;
    curve_request req;
    const fixture* fx = nullptr;
    if (in.data.rfind("fixture:", 0) == 0) {
        fx = find_fixture(in.data.substr(8));
        if (!fx) throw error(error_code::parse_error, "unknown fixture '" + in.data.substr(8) + "'");
        req.data = fx->data;
    } else {
        const data_format format = ends_with(in.data, ".json") ? data_format::json : data_format::csv;
        req.data = parse_dataset(read_file(in.data), format);
    }

    if (in.knots && in.placement) {
        throw error(error_code::invalid_request, "give either --knots or --placement, not both");
    }
    if (in.knots && in.knots->rfind("preset:", 0) == 0) {
        const std::string name = in.knots->substr(7);
        if (!fx || !fx->presets.count(name)) {
            throw error(error_code::parse_error, "preset '" + name + "' needs a fixture dataset that defines it");
        }
        req.knots = nlohmann::json{{"x", fx->presets.at(name)}};
    } else if (const auto& path = in.knots ? in.knots : in.placement) {
        try {
            req.knots = nlohmann::json::parse(read_file(*path));
        } catch (const nlohmann::json::parse_error& e) {
            throw error(error_code::parse_error, e.what());
        }
    }
    return req;
}

int report(const loccurve::error& e) {
    std::cerr << loccurve::error_json(e).dump() << '\n';
    return exit_input;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local C1 piecewise polynomial curves with nodal derivative estimates"};
    app.require_subcommand(1);

    curve_inputs inputs;
    std::size_t samples = loccurve::default_samples;
    std::optional<std::string> out_path;
    std::string format = "json";

    auto add_curve_flags = [&](CLI::App* cmd) {
        cmd->add_option("--data", inputs.data, "CSV (tau,F) or JSON dataset, or fixture:NAME")->required();
        cmd->add_option("--knots", inputs.knots, "JSON secondary knots {\"x\": [...]}, or preset:NAME");
        cmd->add_option("--placement", inputs.placement, "JSON placement {\"alpha2\": a, \"beta\": [...]}");
        cmd->add_option("--out", out_path, "output file (default: stdout)");
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* fit = app.add_subcommand("fit", "build the curve and sample it");
    add_curve_flags(fit);
    fit->add_option("--samples", samples, "number of equally spaced samples")
        ->check(CLI::Range(std::size_t{2}, loccurve::max_samples));

    auto* derivs = app.add_subcommand("derivs", "nodal derivative estimates at interior knots");
    add_curve_flags(derivs);

    std::string function = "quartic-sine";
    std::string mode = "uniform";
    double ratio = 1.0;
    bool ratio_given = false;
    int j_min = 5;
    int j_max = 9;
    double center = 0.5;
    std::string eoc_format = "table";
    auto* eoc = app.add_subcommand("eoc", "errors and orders of convergence on refined three-knot grids");
    eoc->add_option("--function", function, "registered test function");
    eoc->add_option("--mode", mode, "grid family")->check(CLI::IsMember({"uniform", "ratio"}));
    eoc->add_option_function<double>(
        "--ratio", [&](double r) { ratio = r; ratio_given = true; }, "H_{i+1} / H_i for ratio mode");
    eoc->add_option("--j-min", j_min, "coarsest level, H = 2^-j");
    eoc->add_option("--j-max", j_max, "finest level");
    eoc->add_option("--center", center, "middle knot");
    eoc->add_option("--format", eoc_format, "output format")->check(CLI::IsMember({"table", "csv", "json"}));
    eoc->add_option("--out", out_path, "output file (default: stdout)");

    int port = 8080;
    std::string host = "127.0.0.1";
    std::optional<std::string> static_dir;
    auto* serve = app.add_subcommand("serve", "JSON API over HTTP");
    serve->add_option("--port", port, "listen port")->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "listen address");
    serve->add_option("--static", static_dir, "directory served at /")->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (fit->parsed()) {
            const auto req = [&] {
                auto r = load_request(inputs);
                r.samples = samples;
                return r;
            }();
            if (format == "json") {
                write_output(out_path, loccurve::render_curve_response(req));
            } else {
                write_output(out_path, loccurve::samples_to_csv(loccurve::build_curve(req), req.samples));
            }
            return exit_ok;
        }

        if (derivs->parsed()) {
            const auto curve = loccurve::build_curve(load_request(inputs));
            if (format == "json") {
                write_output(out_path, nlohmann::json{{"knot_estimates", loccurve::knot_estimates_json(curve)}}.dump());
            } else {
                write_output(out_path, loccurve::estimates_to_csv(curve));
            }
            return exit_ok;
        }

        if (eoc->parsed()) {
            const loccurve::test_function* fn = nullptr;
            try {
                fn = &loccurve::find_test_function(function);
            } catch (const loccurve::error& e) {
                std::cerr << loccurve::error_json(e).dump() << '\n';
                return exit_usage;
            }
            const auto grid = mode == "uniform" ? loccurve::grid_mode::uniform : loccurve::grid_mode::ratio;
            if (grid == loccurve::grid_mode::ratio && !ratio_given) ratio = 3.0;
            const auto rows = loccurve::run_experiment(*fn, {grid, ratio, j_min, j_max, center});
            if (eoc_format == "table") {
                write_output(out_path, loccurve::format_table(rows));
            } else if (eoc_format == "csv") {
                write_output(out_path, loccurve::rows_to_csv(rows));
            } else {
                nlohmann::json doc = {{"function", fn->name}, {"mode", mode}, {"ratio", ratio}, {"rows", nlohmann::json::array()}};
                for (const auto& r : rows) doc["rows"].push_back(loccurve::to_json(r));
                write_output(out_path, doc.dump());
            }
            return exit_ok;
        }

        if (serve->parsed()) {
            httplib::Server server;
            loccurve::service::install_routes(server, static_dir);
            if (port == 0) {
                port = server.bind_to_any_port(host);
                if (port < 0) throw input_error("cannot bind " + host);
                std::cout << "listening on http://" << host << ':' << port << std::endl;
                return server.listen_after_bind() ? exit_ok : exit_input;
            }
            std::cout << "listening on http://" << host << ':' << port << std::endl;
            return server.listen(host, port) ? exit_ok : exit_input;
        }
    } catch (const loccurve::error& e) {
        return report(e);
    } catch (const input_error& e) {
        std::cerr << nlohmann::json{{"error", "InputError"}, {"detail", e.what()}}.dump() << '\n';
        return exit_input;
    }
    return exit_usage;
}
