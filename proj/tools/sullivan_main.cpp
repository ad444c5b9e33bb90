#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <thread>

#include "sullivan/report.hpp"

namespace fs = std::filesystem;
using namespace sullivan;

namespace {

struct Args {
    std::string file;
    std::string batch_dir;
    std::string json_path;
    int max_degree = -1;
    bool verify = false;
    bool loop = false;
    bool modp = false;
    std::string route = "auto";
    bool reduce_semipure = false;
};

int run_one(const std::string& command, const std::string& path, const Args& a, json& out) {
    AlgebraFile f;
    try {
        f = load_algebra_file(path);
    } catch (const std::exception& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return 1;
    }
    CmdOptions opt;
    opt.max_degree = a.max_degree;
    opt.loop = a.loop;
    opt.route = a.route;
    opt.reduce_semipure = a.reduce_semipure;
    opt.modp_check = a.modp;
    try {
        out = run_command(command, f, opt);
    } catch (const std::exception& e) {
        std::cerr << path << ": internal verification failure: " << e.what() << "\n";
        return 2;
    }
    if (a.verify) {
        std::vector<std::string> failures = verify_report(out);
        out["verified"] = failures.empty();
        if (!failures.empty()) {
            for (const std::string& s : failures) std::cerr << path << ": verify: " << s << "\n";
            return 2;
        }
    }
    return 0;
}

int run(const std::string& command, const Args& a) {
    if (a.max_degree < -1) {
        std::cerr << "usage error: --max-degree must be >= 0\n";
        return 1;
    }
    std::vector<std::string> files;
    if (!a.batch_dir.empty()) {
        for (const auto& e : fs::directory_iterator(a.batch_dir))
            if (e.is_regular_file()) files.push_back(e.path().string());
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            std::cerr << a.batch_dir << ": no input files\n";
            return 1;
        }
    } else {
        files.push_back(a.file);
    }

    std::vector<json> reports(files.size());
    std::vector<int> codes(files.size(), 0);
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (files.size() > 1 && hw > 1) {
        std::vector<std::future<void>> futs;
        for (std::size_t i = 0; i < files.size(); ++i)
            futs.push_back(std::async(std::launch::async, [&, i]() {
                codes[i] = run_one(command, files[i], a, reports[i]);
            }));
        for (auto& fu : futs) fu.get();
    } else {
        for (std::size_t i = 0; i < files.size(); ++i)
            codes[i] = run_one(command, files[i], a, reports[i]);
    }

    for (std::size_t i = 0; i < files.size(); ++i) {
        if (codes[i] != 0) continue;
        if (files.size() > 1) std::cout << "--- " << files[i] << "\n";
        std::cout << human_summary(reports[i]);
    }
    if (!a.json_path.empty()) {
        std::ofstream out(a.json_path);
        if (!out) {
            std::cerr << "cannot write " << a.json_path << "\n";
            return 1;
        }
        if (files.size() == 1)
            out << reports[0].dump(2) << "\n";
        else {
            json arr = json::array();
            for (const json& r : reports) arr.push_back(r);
            out << arr.dump(2) << "\n";
        }
    }
    int worst = 0;
    for (int c : codes) worst = std::max(worst, c);
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Sullivan-model engine: multiplication/loop models, shriek cocycles, "
                 "and loop product/coproduct triviality certificates"};
    app.require_subcommand(1);

    Args a;
    auto add_common = [&](CLI::App* sub, bool with_file = true) {
        if (with_file)
            sub->add_option("file", a.file, "algebra file");
        sub->add_option("--batch", a.batch_dir, "run on every file in a directory");
        sub->add_option("--max-degree", a.max_degree, "verification degree bound");
        sub->add_option("--json", a.json_path, "write the machine-readable report here");
        sub->add_flag("--verify", a.verify, "re-check all witness identities in the report");
        return sub;
    };

    CLI::App* c_check = add_common(app.add_subcommand("check", "parse and classify an algebra"));
    CLI::App* c_models =
        add_common(app.add_subcommand("models", "build the multiplication and loop models"));
    CLI::App* c_shriek =
        add_common(app.add_subcommand("shriek", "construct and certify the shriek cocycle"));
    CLI::App* c_triv = add_common(
        app.add_subcommand("triviality", "decide the loop product/coproduct triviality routes"));
    c_triv->add_option("--route", a.route, "auto | part1 | part2 | part3")
        ->check(CLI::IsMember({"auto", "part1", "part2", "part3"}));
    c_triv->add_flag("--reduce-semipure", a.reduce_semipure,
                     "allow the quadratic semi-pure replacement for the part1 route");
    CLI::App* c_coh =
        add_common(app.add_subcommand("cohomology", "degreewise cohomology dimensions"));
    c_coh->add_flag("--loop", a.loop, "of the free-loop-space model");
    c_coh->add_flag("--modp-check", a.modp, "cross-check ranks modulo a large prime");

    CLI11_PARSE(app, argc, argv);

    CLI::App* sub = app.get_subcommands().front();
    if (a.file.empty() && a.batch_dir.empty()) {
        std::cerr << "usage error: an algebra file (or --batch) is required\n";
        return 1;
    }
    std::string name = sub->get_name();
    (void)c_check;
    (void)c_models;
    (void)c_shriek;
    (void)c_coh;
    return run(name, a);
}
