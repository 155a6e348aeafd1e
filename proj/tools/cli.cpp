#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "matchkit/catalog.hpp"
#include "matchkit/generator.hpp"
#include "matchkit/instance_io.hpp"
#include "matchkit/metrics.hpp"
#include "matchkit/server.hpp"
#include "matchkit/service.hpp"
#include "matchkit/structures.hpp"

namespace matchkit::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << text;
}

// "key=value" pairs; values are read as JSON when possible, else as text.
json params_json(const std::vector<std::string>& pairs)
{
    json p = json::object();
    for (const auto& kv : pairs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw CLI::ValidationError("--param", "expected key=value, got " + kv);
        const std::string value = kv.substr(eq + 1);
        json v = json::parse(value, nullptr, false);
        p[kv.substr(0, eq)] = v.is_discarded() ? json(value) : v;
    }
    return p;
}

std::string html_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string text_report(const OrderedJson& results)
{
    std::ostringstream s;
    for (const auto& r : results) {
        s << "== " << r["algorithm"].get<std::string>() << " ==\n";
        s << "status: " << r["status"].get<std::string>() << "\n";
        if (!r["description"].is_null())
            s << "note: " << r["description"].get<std::string>() << "\n";
        for (const auto& m : r["matchings"]) {
            s << "matching " << m["matchingNumber"].get<int>() << ":";
            for (const auto& [k, v] : m["statsToDisplay"].items())
                s << " " << k << "=" << v.get<std::string>();
            s << "\n" << m["statsToExpand"]["Matched Pairs"].get<std::string>();
        }
        if (!r["stats"].get<std::string>().empty())
            s << r["stats"].get<std::string>() << "\n";
        for (const auto& [k, v] : r["expandableStats"].items())
            s << k << ": " << v.get<std::string>() << "\n";
        for (const auto& g : r["graphs"])
            s << "graph " << g["name"].get<std::string>() << ": " << g["nodes"].size() << " nodes, "
              << g["edges"].size() << " edges\n";
    }
    return s.str();
}

std::string html_report(const OrderedJson& results)
{
    std::ostringstream s;
    s << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>Matching results</title>\n"
      << "<style>body{font-family:sans-serif}table{border-collapse:collapse}td,th{border:1px solid #999;"
         "padding:2px 6px}pre{background:#f4f4f4;padding:4px}</style></head><body>\n";
    for (const auto& r : results) {
        s << "<section class=\"algorithm\"><h2>" << html_escape(r["algorithm"].get<std::string>()) << "</h2>\n";
        s << "<p>Status: " << html_escape(r["status"].get<std::string>()) << "; matchings: "
          << r["numberOfMatchings"].get<int>() << "</p>\n";
        if (!r["description"].is_null())
            s << "<p>" << html_escape(r["description"].get<std::string>()) << "</p>\n";
        for (const auto& m : r["matchings"]) {
            s << "<div class=\"matching\"><h3>Matching " << m["matchingNumber"].get<int>() << "</h3><table>";
            for (const auto& [k, v] : m["statsToDisplay"].items())
                s << "<tr><th>" << html_escape(k) << "</th><td>" << html_escape(v.get<std::string>()) << "</td></tr>";
            s << "</table>\n";
            for (const auto& [k, v] : m["statsToExpand"].items())
                s << "<h4>" << html_escape(k) << "</h4><pre>" << html_escape(v.get<std::string>()) << "</pre>\n";
            s << "</div>\n";
        }
        if (!r["stats"].get<std::string>().empty())
            s << "<pre>" << html_escape(r["stats"].get<std::string>()) << "</pre>\n";
        if (!r["expandableStats"].empty()) {
            s << "<table>";
            for (const auto& [k, v] : r["expandableStats"].items())
                s << "<tr><th>" << html_escape(k) << "</th><td>" << html_escape(v.get<std::string>()) << "</td></tr>";
            s << "</table>\n";
        }
        for (const auto& g : r["graphs"]) {
            s << "<h4>" << html_escape(g["name"].get<std::string>()) << "</h4><ul class=\"graph\">";
            for (const auto& e : g["edges"])
                s << "<li>" << html_escape(e["source"].get<std::string>()) << " &rarr; "
                  << html_escape(e["target"].get<std::string>()) << "</li>";
            s << "</ul>\n";
        }
        s << "</section>\n";
    }
    // Raw results for re-rendering; "</" is escaped so the script block stays closed.
    std::string data = results.dump();
    for (std::size_t pos = 0; (pos = data.find("</", pos)) != std::string::npos; pos += 3)
        data.replace(pos, 2, "<\\/");
    s << "<script type=\"application/json\" id=\"results\">" << data << "</script>\n</body></html>\n";
    return s.str();
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        const auto dash = item.find('-');
        if (dash != std::string::npos && dash > 0) {
            const int lo = std::stoi(item.substr(0, dash)), hi = std::stoi(item.substr(dash + 1));
            for (int x = lo; x <= hi; ++x)
                out.push_back(x);
        } else {
            out.push_back(std::stoi(item));
        }
    }
    return out;
}

std::string number(double x)
{
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::fixed << std::setprecision(4) << x;
    return s.str();
}

}  // namespace

std::string bench_csv(const std::vector<int>& xs, const std::vector<std::string>& algorithms, int trials,
                      unsigned long long seed)
{
    std::vector<AlgorithmId> ids;
    for (const auto& name : algorithms) {
        const auto id = find_algorithm(name, ProblemClass::SPAS);
        if (!id)
            throw CLI::ValidationError("--algs", "unknown student-project algorithm: " + name);
        ids.push_back(*id);
    }
    struct Cell {
        double size = 0, cost = 0, avg = 0;
    };
    // One task per (x, trial); results are combined in a fixed order.
    std::vector<std::future<std::vector<Cell>>> tasks;
    for (int x : xs)
        for (int t = 0; t < trials; ++t)
            tasks.push_back(std::async(std::launch::async, [&, x, t] {
                const Instance inst = experiment_family(x, seed + 1000003ULL * x + t);
                std::vector<Cell> cells;
                for (AlgorithmId id : ids) {
                    const RunOutput out = run_algorithm(id, inst);
                    Cell c;
                    if (!out.matchings.empty()) {
                        const MatchingStats st = compute_stats(inst, out.matchings.front());
                        c.size = st.size;
                        c.cost = static_cast<double>(st.total_cost);
                        c.avg = st.size ? c.cost / st.size : 0.0;
                    }
                    cells.push_back(c);
                }
                return cells;
            }));
    std::ostringstream csv;
    csv << "x,algorithm,meanSize,meanTotalStudentCost,meanAvgStudentCost\n";
    std::size_t next = 0;
    for (int x : xs) {
        std::vector<Cell> sum(ids.size());
        for (int t = 0; t < trials; ++t) {
            const auto cells = tasks[next++].get();
            for (std::size_t a = 0; a < ids.size(); ++a) {
                sum[a].size += cells[a].size;
                sum[a].cost += cells[a].cost;
                sum[a].avg += cells[a].avg;
            }
        }
        for (std::size_t a = 0; a < ids.size(); ++a)
            csv << x << "," << algorithm_info(ids[a]).name << "," << number(sum[a].size / trials) << ","
                << number(sum[a].cost / trials) << "," << number(sum[a].avg / trials) << "\n";
    }
    return csv.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Matching under preferences: generate, solve, benchmark and serve"};
    app.require_subcommand(1);

    std::string cls_text = "SR", out_path, format = "json", kind_text, host = "127.0.0.1";
    std::vector<std::string> params, algs, files;
    unsigned long long seed = 0;
    bool seed_given = false;
    int port = 8080, trials = 20;
    double timeout_s = 30;
    std::string x_values = "1-10";

    auto* gen = app.add_subcommand("generate", "Write random instances and a provenance file");
    gen->add_option("--class", cls_text, "Problem class")->required();
    gen->add_option("--params,--param", params, "Generator parameters as key=value")->allow_extra_args(false);
    gen->add_option("--seed", seed, "Random seed")->each([&](const std::string&) { seed_given = true; });
    gen->add_option("--out", out_path, "Output directory")->required();

    auto* solve = app.add_subcommand("solve", "Run algorithms on instance files");
    solve->add_option("--class", cls_text, "Problem class")->required();
    solve->add_option("--alg", algs, "Algorithm name (repeatable)")->required()->allow_extra_args(false);
    solve->add_option("files", files, "Instance files")->required();
    solve->add_option("--format", format, "json, text or html")->check(CLI::IsMember({"json", "text", "html"}));
    solve->add_option("--seed", seed, "Seed for randomised algorithms");
    solve->add_option("--timeout", timeout_s, "Seconds before giving up")->check(CLI::NonNegativeNumber);
    solve->add_option("--out", out_path, "Output file (default stdout)");

    auto* list = app.add_subcommand("list-algorithms", "List algorithms for a class or an instance");
    list->add_option("--class", cls_text, "Problem class")->required();
    list->add_option("files", files, "Optional instance file to filter by applicability");

    auto* bench = app.add_subcommand("bench", "Experiment-family batch means as CSV");
    bench->add_option("--x-values", x_values, "Comma list or range, e.g. 1-10");
    bench->add_option("--algs", algs, "Student-project algorithm names")->delimiter(',');
    bench->add_option("--trials", trials, "Trials per x")->check(CLI::PositiveNumber);
    bench->add_option("--seed", seed, "Base seed");
    bench->add_option("--out", out_path, "CSV file (default stdout)");

    auto* serve = app.add_subcommand("serve", "Serve the HTTP endpoints");
    serve->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "Address to bind");

    auto* exp = app.add_subcommand("export", "Emit a structural graph of an instance");
    exp->add_option("--class", cls_text, "Problem class")->required();
    exp->add_option("--kind", kind_text, "sm-rotation-poset, sm-rotation-digraph, sm-hasse, sr-rotation-poset, cha-switching")
        ->required();
    exp->add_option("--format", format, "graph-json or dot")->check(CLI::IsMember({"graph-json", "dot", "json"}));
    exp->add_option("files", files, "Instance file")->required()->expected(1);
    exp->add_option("--out", out_path, "Output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*gen) {
            const ProblemClass cls = parse_problem_class(cls_text);
            json wire = params_json(params);
            if (seed_given)
                wire["seed"] = seed;
            GeneratorParams p;
            try {
                p = params_from_wire(cls, wire);
            } catch (const DomainError& e) {
                err << "invalid parameters: " << e.what() << "\n";
                return usage;
            }
            const auto batch = generate(cls, p);
            fs::create_directories(out_path);
            const int width = static_cast<int>(std::to_string(batch.size()).size());
            for (std::size_t i = 0; i < batch.size(); ++i) {
                std::ostringstream name;
                name << "instance_" << std::setw(width) << std::setfill('0') << i + 1 << ".txt";
                std::ofstream(fs::path(out_path) / name.str(), std::ios::binary) << serialize_instance(batch[i]) << "\n";
            }
            json prov = {{"problemClass", std::string(to_string(cls))}, {"parameters", wire}, {"seed", p.seed},
                         {"numOfInstances", batch.size()}};
            std::ofstream(fs::path(out_path) / "provenance.json") << prov.dump(2) << "\n";
            return ok;
        }

        if (*solve) {
            const ProblemClass cls = parse_problem_class(cls_text);
            std::vector<Instance> instances;
            for (const auto& f : files) {
                try {
                    instances.push_back(parse_instance(cls, read_file(f)));
                } catch (const DomainError& e) {
                    err << f << ": " << e.what() << "\n";
                    return parse;
                }
            }
            RunOptions options;
            options.seed = seed;
            auto task = std::make_shared<std::packaged_task<OrderedJson()>>([=] {
                OrderedJson results = OrderedJson::array();
                for (const auto& a : algs)
                    results.push_back(run_result(a, cls, instances, options));
                return results;
            });
            auto fut = task->get_future();
            std::thread([task] { (*task)(); }).detach();
            if (fut.wait_for(std::chrono::duration<double>(timeout_s)) != std::future_status::ready) {
                err << "timeout after " << timeout_s << " s\n";
                std::cout.flush();
                std::_Exit(timeout);
            }
            const OrderedJson results = fut.get();
            std::string text = format == "json" ? results.dump(2) + "\n"
                               : format == "text" ? text_report(results)
                                                  : html_report(results);
            write_output(out_path, text, out);
            bool any = false;
            for (const auto& r : results) {
                any = any || r["status"] == "success";
                if (r["status"] != "success")
                    err << r["algorithm"].get<std::string>() << ": " << r["description"].get<std::string>() << "\n";
            }
            return any ? ok : inapplicable;
        }

        if (*list) {
            const ProblemClass cls = parse_problem_class(cls_text);
            std::vector<AlgorithmInfo> infos = class_algorithms(cls);
            if (!files.empty()) {
                Instance inst;
                try {
                    inst = parse_instance(cls, read_file(files.front()));
                } catch (const DomainError& e) {
                    err << files.front() << ": " << e.what() << "\n";
                    return parse;
                }
                infos = applicable_algorithms(classify(inst));
            }
            for (const auto& info : infos)
                out << info.name << "\t" << info.description << "\n";
            return ok;
        }

        if (*bench) {
            if (algs.empty())
                algs = {"Student-Optimal Stable", "Lecturer-Optimal Stable", "Generous One-Sided", "Greedy One-Sided",
                        "Cost-Optimal One-Sided"};
            std::vector<int> xs;
            try {
                xs = parse_int_list(x_values);
            } catch (const std::exception&) {
                err << "invalid --x-values: " << x_values << "\n";
                return usage;
            }
            if (xs.empty() || std::any_of(xs.begin(), xs.end(), [](int x) { return x < 1; })) {
                err << "--x-values must list positive integers\n";
                return usage;
            }
            write_output(out_path, bench_csv(xs, algs, trials, seed), out);
            return ok;
        }

        if (*serve) {
            Server server;
            const int bound = server.bind(host, port);
            if (bound < 0) {
                err << "cannot bind " << host << ":" << port << "\n";
                return usage;
            }
            err << "listening on " << host << ":" << bound << "\n";
            server.listen();
            return ok;
        }

        if (*exp) {
            const ProblemClass cls = parse_problem_class(cls_text);
            StructureKind kind;
            try {
                kind = parse_structure_kind(kind_text);
            } catch (const DomainError& e) {
                err << e.what() << "\n";
                return usage;
            }
            Instance inst;
            try {
                inst = parse_instance(cls, read_file(files.front()));
            } catch (const DomainError& e) {
                err << files.front() << ": " << e.what() << "\n";
                return parse;
            }
            StructureGraph g;
            try {
                g = structural_graph(inst, kind);
            } catch (const DomainError& e) {
                err << e.what() << "\n";
                return inapplicable;
            }
            write_output(out_path, format == "dot" ? to_dot(g) : to_graph_json(g) + "\n", out);
            return ok;
        }
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return usage;
    }
    return ok;
}

}  // namespace matchkit::cli
