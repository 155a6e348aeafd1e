#include "matchkit/service.hpp"

#include <cctype>
#include <functional>
#include <future>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "matchkit/catalog.hpp"
#include "matchkit/instance_io.hpp"
#include "matchkit/metrics.hpp"

namespace matchkit {

namespace {

using json = nlohmann::json;
using Setter = std::function<void(GeneratorParams&, const json&)>;

int as_int(const std::string& key, const json& v)
{
    if (v.is_number_integer())
        return v.get<int>();
    if (v.is_number_float() && v.get<double>() == static_cast<int>(v.get<double>()))
        return static_cast<int>(v.get<double>());
    throw DomainError("parameter " + key + " must be an integer");
}

double as_real(const std::string& key, const json& v)
{
    if (!v.is_number())
        throw DomainError("parameter " + key + " must be a number");
    return v.get<double>();
}

bool as_bool(const std::string& key, const json& v)
{
    if (!v.is_boolean())
        throw DomainError("parameter " + key + " must be true or false");
    return v.get<bool>();
}

std::map<std::string, Setter> wire_fields(ProblemClass cls)
{
    std::map<std::string, Setter> f;
    auto integer = [&](const char* key, auto member) {
        f[key] = [key, member](GeneratorParams& p, const json& v) { p.*member = as_int(key, v); };
    };
    auto real = [&](const char* key, double GeneratorParams::*member) {
        f[key] = [key, member](GeneratorParams& p, const json& v) { p.*member = as_real(key, v); };
    };
    integer("numOfInstances", &GeneratorParams::num_instances);
    real("probabilityOfTies", &GeneratorParams::probability_of_ties);
    f["seed"] = [](GeneratorParams& p, const json& v) {
        if (!v.is_number_integer())
            throw DomainError("parameter seed must be an integer");
        p.seed = v.is_number_unsigned() ? v.get<std::uint64_t>() : static_cast<std::uint64_t>(v.get<std::int64_t>());
    };
    if (cls == ProblemClass::SR) {
        integer("numOfRoommates", &GeneratorParams::num_first);
        real("preferenceListDensity", &GeneratorParams::density);
        return f;
    }
    real("skewness", &GeneratorParams::skewness);
    real("secondarySkewness", &GeneratorParams::secondary_skewness);
    integer("prefListLengthLowerBound", &GeneratorParams::lower);
    integer("prefListLengthUpperBound", &GeneratorParams::upper);
    f["evenPositionDistribution"] = [](GeneratorParams& p, const json& v) {
        p.even_capacities = as_bool("evenPositionDistribution", v);
    };
    auto total = [&](const char* key, long GeneratorParams::*member) {
        f[key] = [key, member](GeneratorParams& p, const json& v) { p.*member = as_int(key, v); };
    };
    switch (cls) {
    case ProblemClass::HR:
    case ProblemClass::SM:
        integer("numOfResidents", &GeneratorParams::num_first);
        integer("numOfHospitals", &GeneratorParams::num_second);
        if (cls == ProblemClass::HR)
            total("totalCapacity", &GeneratorParams::second_capacity);
        break;
    case ProblemClass::HA:
    case ProblemClass::CHA:
        integer("numOfApplicants", &GeneratorParams::num_first);
        integer("numOfHouses", &GeneratorParams::num_second);
        if (cls == ProblemClass::CHA)
            total("totalCapacity", &GeneratorParams::second_capacity);
        break;
    default:
        integer("numOfStudents", &GeneratorParams::num_first);
        integer("numOfProjects", &GeneratorParams::num_second);
        integer("numOfLecturers", &GeneratorParams::num_third);
        total("totalProjectCapacity", &GeneratorParams::second_capacity);
        total("totalLecturerCapacity", &GeneratorParams::third_capacity);
        break;
    }
    return f;
}

std::string lower(std::string s)
{
    for (char& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string heading(Role r)
{
    std::string s(to_string(r));
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s + "s";
}

std::string list_line(int agent, const PreferenceList& list, const std::function<bool(int)>& matched)
{
    std::string out = std::to_string(agent + 1) + ":";
    for (const auto& group : list.groups()) {
        out += ' ';
        if (group.size() > 1)
            out += '(';
        for (std::size_t i = 0; i < group.size(); ++i) {
            if (i)
                out += ' ';
            const std::string id = std::to_string(group[i] + 1);
            out += matched(group[i]) ? "<" + id + ">" : id;
        }
        if (group.size() > 1)
            out += ')';
    }
    return out;
}

std::string fixed(double x)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << x;
    return s.str();
}

OrderedJson base_result(const std::string& algorithm)
{
    OrderedJson r;
    r["status"] = "success";
    r["description"] = nullptr;
    r["algorithm"] = lower(algorithm);
    r["numberOfMatchings"] = 0;
    r["matchings"] = OrderedJson::array();
    r["numberOfIterations"] = 0;
    r["stats"] = "";
    r["expandableStats"] = OrderedJson::object();
    r["graphs"] = OrderedJson::array();
    return r;
}

OrderedJson error_result(const std::string& algorithm, const std::string& why)
{
    OrderedJson r = base_result(algorithm);
    r["status"] = "error";
    r["description"] = why;
    return r;
}

OrderedJson matching_entry(const Instance& inst, const Matching& m, int number)
{
    const MatchingStats st = compute_stats(inst, m);
    OrderedJson e;
    e["matchingNumber"] = number;
    e["statsToDisplay"] = {{"Size", std::to_string(st.size)},
                           {"Profile Amount", profile_amount_text(st.total_profile)},
                           {"Profile Position", profile_position_text(st.total_profile)},
                           {"Cost", std::to_string(st.total_cost)}};
    e["statsToExpand"] = {{"Preference Lists", preference_text(inst, m)}, {"Matched Pairs", matched_pairs_text(m)}};
    return e;
}

OrderedJson envelope_error(const std::string& why)
{
    OrderedJson r;
    r["status"] = "error";
    r["statusText"] = why;
    r["availableAlgs"] = nullptr;
    r["instances"] = nullptr;
    return r;
}

const json& field(const json& body, const char* key)
{
    if (!body.is_object() || !body.contains(key))
        throw RequestError(std::string("missing field ") + key);
    return body.at(key);
}

std::string text_field(const json& body, const char* key)
{
    const json& v = field(body, key);
    if (!v.is_string())
        throw RequestError(std::string("field ") + key + " must be a string");
    return v.get<std::string>();
}

std::vector<std::string> text_list(const json& body, const char* key)
{
    const json& v = field(body, key);
    if (v.is_string())
        return {v.get<std::string>()};
    if (!v.is_array())
        throw RequestError(std::string("field ") + key + " must be a string or an array of strings");
    std::vector<std::string> out;
    for (const auto& x : v) {
        if (!x.is_string())
            throw RequestError(std::string("field ") + key + " must hold strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

OrderedJson dispatch(const std::string& path, const json& body)
{
    if (path == "/check-file")
        return check_file(body);
    if (path == "/check-params")
        return check_params(body);
    return run_algorithms(body);
}

}  // namespace

GeneratorParams params_from_wire(ProblemClass cls, const json& params)
{
    if (!params.is_object())
        throw DomainError("parameters must be an object");
    const auto fields = wire_fields(cls);
    GeneratorParams p;
    p.seed = std::random_device{}();
    for (const auto& [key, value] : params.items()) {
        auto it = fields.find(key);
        if (it == fields.end())
            throw DomainError("unknown parameter " + key);
        it->second(p, value);
    }
    if (cls == ProblemClass::SM)
        p.num_second = p.num_second ? p.num_second : p.num_first;
    validate_params(cls, p);
    return p;
}

std::string preference_text(const Instance& inst, const Matching& m)
{
    std::vector<std::string> lines;
    auto section = [&](Side side, const std::function<bool(int, int)>& matched) {
        const AgentGroup& g = inst.group(side);
        if (!g.ranks())
            return;
        if (!inst.roommates())
            lines.push_back(heading(g.role));
        for (int a = 0; a < g.size(); ++a)
            lines.push_back(list_line(a, g.prefs[a], [&](int b) { return matched(a, b); }));
    };
    if (inst.roommates()) {
        section(Side::first, [&](int a, int b) { return m.partner(a) == b; });
    } else {
        section(Side::first, [&](int a, int b) { return m.partner(a) == b; });
        if (is_spa(inst.problem_class())) {
            section(Side::third, [&](int l, int s) {
                return m.partner(s) != -1 && inst.owner(m.partner(s)) == l;
            });
        } else {
            section(Side::second, [&](int h, int r) { return m.partner(r) == h; });
        }
    }
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i)
        out += (i ? "\n" : "") + lines[i];
    return out;
}

std::string matched_pairs_text(const Matching& m)
{
    std::string out;
    for (auto [a, b] : m.pairs())
        out += "(" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + ")\n";
    return out;
}

OrderedJson available_algorithms(const std::vector<Instance>& instances)
{
    OrderedJson out = OrderedJson::object();
    if (instances.empty())
        return out;
    std::vector<InstanceProperties> props;
    for (const auto& inst : instances)
        props.push_back(classify(inst));
    for (const auto& info : class_algorithms(instances.front().problem_class())) {
        if (instances.size() > 1 && !single_output(info.id))
            continue;
        bool ok = true;
        for (const auto& p : props)
            ok = ok && is_applicable(info.id, p);
        if (ok)
            out[info.name] = info.description;
    }
    return out;
}

OrderedJson run_result(const std::string& algorithm, ProblemClass cls, const std::vector<Instance>& instances,
                       const RunOptions& options)
{
    const auto id = find_algorithm(algorithm, cls);
    if (!id)
        return error_result(algorithm, "unknown algorithm: " + algorithm);
    const std::string name = algorithm_info(*id).name;
    if (instances.empty())
        return error_result(name, "no instances given");
    OrderedJson r = base_result(name);
    try {
        if (instances.size() == 1) {
            const RunOutput out = run_algorithm(*id, instances.front(), options);
            for (std::size_t i = 0; i < out.matchings.size(); ++i)
                r["matchings"].push_back(matching_entry(instances.front(), out.matchings[i], static_cast<int>(i)));
            r["numberOfMatchings"] = out.matchings.size();
            if (!out.note.empty())
                r["description"] = out.note;
            r["stats"] = out.text;
            for (const auto& g : out.graphs)
                r["graphs"].push_back(OrderedJson::parse(to_graph_json(g)));
            r["numberOfIterations"] = 1;
            return r;
        }
        if (!single_output(*id))
            return error_result(name, name + " runs on a single instance only");
        std::vector<MatchingStats> stats;
        int without = 0;
        for (const auto& inst : instances) {
            const RunOutput out = run_algorithm(*id, inst, options);
            if (out.matchings.empty())
                ++without;
            else
                stats.push_back(compute_stats(inst, out.matchings.front()));
        }
        const BatchSummary s = summarize_batch(stats);
        OrderedJson ex = OrderedJson::object();
        ex["Instances"] = std::to_string(instances.size());
        ex["Instances Without Matching"] = std::to_string(without);
        auto put = [&](const std::string& what, const FieldSummary& f) {
            ex["Mean " + what] = fixed(f.mean);
            ex["Min " + what] = fixed(f.min);
            ex["Max " + what] = fixed(f.max);
        };
        put("Size", s.size);
        put("Cost", s.total_cost);
        put("Regret", s.total_regret);
        for (const auto& g : s.groups) {
            std::string role(heading(g.role));
            role.pop_back();
            put(role + " Cost", g.cost);
            put(role + " Regret", g.regret);
        }
        r["stats"] = std::to_string(instances.size()) + " instances; mean size " + fixed(s.size.mean) + "; mean cost " +
                     fixed(s.total_cost.mean);
        r["expandableStats"] = ex;
        r["numberOfIterations"] = instances.size();
        return r;
    } catch (const DomainError& e) {
        return error_result(name, e.what());
    }
}

OrderedJson check_file(const json& body)
{
    const std::string cls_text = text_field(body, "problemClass");
    const std::string contents = text_field(body, "fileContents");
    try {
        const Instance inst = parse_instance(parse_problem_class(cls_text), contents);
        OrderedJson r;
        r["status"] = "success";
        r["statusText"] = nullptr;
        r["availableAlgs"] = available_algorithms({inst});
        r["instances"] = nullptr;
        return r;
    } catch (const DomainError& e) {
        return envelope_error(e.what());
    }
}

OrderedJson check_params(const json& body)
{
    const std::string cls_text = text_field(body, "problemClass");
    const json& params = field(body, "parameters");
    try {
        const ProblemClass cls = parse_problem_class(cls_text);
        const auto instances = generate(cls, params_from_wire(cls, params));
        OrderedJson r;
        r["status"] = "success";
        r["statusText"] = nullptr;
        r["availableAlgs"] = available_algorithms(instances);
        r["instances"] = OrderedJson::array();
        for (const auto& inst : instances)
            r["instances"].push_back(serialize_instance(inst));
        return r;
    } catch (const DomainError& e) {
        return envelope_error(e.what());
    }
}

OrderedJson run_algorithms(const json& body)
{
    const std::string cls_text = text_field(body, "problemClass");
    const auto names = text_list(body, "algorithms");
    const auto texts = text_list(body, "fileContents");
    RunOptions options;
    if (body.contains("seed")) {
        if (!body["seed"].is_number_unsigned())
            throw RequestError("field seed must be a non-negative integer");
        options.seed = body["seed"].get<std::uint64_t>();
    }
    OrderedJson out = OrderedJson::array();
    std::vector<Instance> instances;
    std::string failure;
    try {
        const ProblemClass cls = parse_problem_class(cls_text);
        for (const auto& t : texts)
            instances.push_back(parse_instance(cls, t));
        for (const auto& name : names)
            out.push_back(run_result(name, cls, instances, options));
    } catch (const DomainError& e) {
        out = OrderedJson::array();
        for (const auto& name : names)
            out.push_back(error_result(name, e.what()));
    }
    return out;
}

ServiceResponse handle_request(const std::string& path, const std::string& body, const ServiceOptions& options)
{
    if (path != "/check-file" && path != "/check-params" && path != "/run-algorithms")
        return {404, envelope_error("unknown endpoint " + path).dump()};
    json parsed = json::parse(body, nullptr, false);
    if (parsed.is_discarded())
        return {400, envelope_error("request body is not valid JSON").dump()};
    auto task = std::make_shared<std::packaged_task<ServiceResponse()>>([path, parsed = std::move(parsed)] {
        try {
            return ServiceResponse{201, dispatch(path, parsed).dump()};
        } catch (const RequestError& e) {
            return ServiceResponse{400, envelope_error(e.what()).dump()};
        } catch (const std::exception& e) {
            return ServiceResponse{500, envelope_error(e.what()).dump()};
        }
    });
    auto result = task->get_future();
    std::thread([task] { (*task)(); }).detach();
    if (result.wait_for(options.timeout) != std::future_status::ready)
        return {201, envelope_error("timeout").dump()};
    return result.get();
}

}  // namespace matchkit
