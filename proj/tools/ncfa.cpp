#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <mutex>
#include <iostream>

#include "ncfa/suites.hpp"

namespace {

int write_out(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open " << path << "\n";
        return 2;
    }
    f << body;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"property-suite runner for the ncfa library"};
    std::string suite = "all";
    std::string out;
    ncfa::SuiteOptions opts;
    bool as_json = false, as_csv = false;
    int jobs = 1;

    app.add_option("--suite", suite, "suite name, or 'all'");
    app.add_option("--seed", opts.seed, "root seed; fans out per suite and test");
    app.add_option("--out", out, "output path (default: stdout)");
    app.add_option("--dim", opts.dim, "dimension override");
    app.add_option("--trials", opts.trials, "trial-count override");
    app.add_option("--grid", opts.grid, "quadrature grid override");
    app.add_flag("--json", as_json, "emit the JSON report (default)");
    app.add_flag("--csv", as_csv, "emit the suite's CSV profile instead of JSON");
    app.add_option("--jobs", jobs, "max concurrent suites when running 'all'")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (as_json && as_csv) {
        std::cerr << "error: --json and --csv are mutually exclusive\n";
        return 2;
    }

    try {
        std::vector<std::string> names;
        if (suite == "all") {
            names = ncfa::suite_names();
        } else {
            if (!ncfa::suite_registry().count(suite))
                throw ncfa::BadConfig("unknown suite: " + suite);
            names.push_back(suite);
        }
        if (as_csv && names.size() != 1)
            throw ncfa::BadConfig("--csv needs a single profile-producing suite");

        std::vector<ncfa::SuiteReport> reports(names.size());
        size_t next = 0;
        std::mutex mu;
        auto worker = [&]() {
            for (;;) {
                size_t i;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= names.size()) return;
                    i = next++;
                }
                reports[i] = ncfa::run_suite(names[i], opts);
            }
        };
        std::vector<std::future<void>> pool;
        for (int j = 1; j < std::min<int>(jobs, int(names.size())); ++j)
            pool.push_back(std::async(std::launch::async, worker));
        worker();
        for (auto& f : pool) f.get();

        bool ok = true;
        for (const auto& r : reports) ok = ok && r.all_pass();

        std::string body;
        if (as_csv) {
            if (reports[0].csv.empty())
                throw ncfa::BadConfig("suite '" + names[0] + "' produces no CSV profile");
            body = reports[0].csv;
        } else if (reports.size() == 1) {
            body = reports[0].to_json().dump(2) + "\n";
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : reports) arr.push_back(r.to_json());
            body = arr.dump(2) + "\n";
        }
        const int werr = write_out(out, body);
        if (werr != 0) return werr;
        return ok ? 0 : 1;
    } catch (const ncfa::BadConfig& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
