#include "matchkit/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace matchkit {

ParseError::ParseError(Kind kind, int line, const std::string& what)
    : DomainError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), kind_(kind), line_(line)
{
}

namespace {

using Kind = ParseError::Kind;

struct Line {
    int number;
    std::string text;
};

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

/// Splits into lines, drops comment lines and trims every line.
std::vector<Line> split_lines(std::string_view text)
{
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        ++number;
        std::string t = trim(text.substr(pos, nl - pos));
        if (t.empty() || t[0] != '#')
            out.push_back({number, std::move(t)});
        pos = nl + 1;
    }
    return out;
}

std::vector<std::string> tokens(const std::string& s)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

long to_number(const std::string& tok, int line)
{
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(Kind::non_numeric, line, "expected a number, got '" + tok + "'");
    return v;
}

int to_count(const std::string& tok, int line)
{
    long v = to_number(tok, line);
    if (v < 0)
        throw ParseError(Kind::count_mismatch, line, "negative agent count");
    return static_cast<int>(v);
}

int to_capacity(const std::string& tok, int line)
{
    long v = to_number(trim(tok), line);
    if (v <= 0)
        throw ParseError(Kind::non_positive_capacity, line, "capacity must be positive");
    return static_cast<int>(v);
}

/// Parses "a (b c) d" with 1-based ids in [1, limit].
PreferenceList parse_prefs(std::string_view s, int limit, int line, int self = -1)
{
    std::vector<TieGroup> groups;
    std::set<int> seen;
    bool in_tie = false;
    TieGroup tie;
    std::size_t i = 0;
    auto add = [&](int id) {
        if (id < 1 || id > limit || id - 1 == self)
            throw ParseError(Kind::dangling_reference, line, "reference to unknown agent " + std::to_string(id));
        if (!seen.insert(id).second)
            throw ParseError(Kind::duplicate_id, line, "agent " + std::to_string(id) + " listed twice");
        if (in_tie)
            tie.push_back(id - 1);
        else
            groups.push_back({id - 1});
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(') {
            if (in_tie)
                throw ParseError(Kind::unbalanced_parentheses, line, "nested '('");
            in_tie = true;
            tie.clear();
            ++i;
        } else if (c == ')') {
            if (!in_tie || tie.empty())
                throw ParseError(Kind::unbalanced_parentheses, line, "unmatched or empty ')'");
            in_tie = false;
            groups.push_back(tie);
            ++i;
        } else {
            std::size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' &&
                   s[j] != ')')
                ++j;
            add(static_cast<int>(to_number(std::string(s.substr(i, j - i)), line)));
            i = j;
        }
    }
    if (in_tie)
        throw ParseError(Kind::unbalanced_parentheses, line, "missing ')'");
    return PreferenceList(std::move(groups));
}

class Reader {
public:
    explicit Reader(std::string_view text) : lines_(split_lines(text)) {}

    bool done() const { return next_ >= lines_.size(); }

    std::vector<std::string> header(std::size_t expected)
    {
        skip_blank();
        if (done())
            throw ParseError(Kind::empty_instance, 0, "empty instance");
        const Line& l = lines_[next_++];
        auto t = tokens(l.text);
        if (t.size() != expected)
            throw ParseError(Kind::malformed_line, l.number,
                             "header needs " + std::to_string(expected) + " counts");
        header_line_ = l.number;
        return t;
    }

    /// Next non-blank line split on ':', checking the leading id.
    std::pair<std::vector<std::string>, int> record(int expected_id, std::string_view what)
    {
        skip_blank();
        if (done())
            throw ParseError(Kind::count_mismatch, last_number(),
                             "missing " + std::string(what) + " " + std::to_string(expected_id));
        const Line& l = lines_[next_++];
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (true) {
            std::size_t c = l.text.find(':', pos);
            parts.push_back(l.text.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
            if (c == std::string::npos)
                break;
            pos = c + 1;
        }
        if (parts.size() < 2)
            throw ParseError(Kind::malformed_line, l.number, "expected 'id: ...'");
        const long id = to_number(trim(parts[0]), l.number);
        if (id != expected_id)
            throw ParseError(Kind::count_mismatch, l.number,
                             "expected " + std::string(what) + " " + std::to_string(expected_id) + ", got " +
                                 std::to_string(id));
        parts.erase(parts.begin());
        return {parts, l.number};
    }

    /// Raw line (may be blank) for the roommates format.
    const Line* raw()
    {
        if (done())
            return nullptr;
        return &lines_[next_++];
    }

    void expect_end()
    {
        skip_blank();
        if (!done())
            throw ParseError(Kind::count_mismatch, lines_[next_].number, "more lines than the header declares");
    }

    int header_line() const { return header_line_; }

private:
    void skip_blank()
    {
        while (!done() && lines_[next_].text.empty())
            ++next_;
    }
    int last_number() const { return lines_.empty() ? 0 : lines_.back().number; }

    std::vector<Line> lines_;
    std::size_t next_ = 0;
    int header_line_ = 0;
};

std::vector<PreferenceList> first_group_lists(Reader& in, int count, int limit, std::string_view what)
{
    std::vector<PreferenceList> prefs;
    for (int i = 1; i <= count; ++i) {
        auto [parts, line] = in.record(i, what);
        if (parts.size() != 1)
            throw ParseError(Kind::malformed_line, line, "expected 'id: preferences'");
        prefs.push_back(parse_prefs(parts[0], limit, line));
    }
    return prefs;
}

Instance parse_roommates(Reader& in)
{
    const auto head = in.header(1);
    const int n = to_count(head[0], in.header_line());
    std::vector<PreferenceList> prefs;
    for (int i = 0; i < n; ++i) {
        const Line* l = in.raw();
        if (!l)
            throw ParseError(Kind::count_mismatch, 0,
                             "expected " + std::to_string(n) + " preference lines, got " + std::to_string(i));
        prefs.push_back(parse_prefs(l->text, n, l->number, i));
    }
    in.expect_end();
    return Instance::roommates(std::move(prefs));
}

Instance parse_two_sided(ProblemClass cls, Reader& in)
{
    const auto head = in.header(2);
    const int n1 = to_count(head[0], in.header_line());
    const int n2 = to_count(head[1], in.header_line());
    auto residents = first_group_lists(in, n1, n2, "resident");
    std::vector<int> caps;
    std::vector<PreferenceList> hospitals;
    for (int j = 1; j <= n2; ++j) {
        auto [parts, line] = in.record(j, "hospital");
        if (parts.size() > 2)
            throw ParseError(Kind::malformed_line, line, "expected 'id: capacity: preferences'");
        caps.push_back(to_capacity(parts[0], line));
        hospitals.push_back(parts.size() == 2 ? parse_prefs(parts[1], n1, line) : PreferenceList{});
    }
    in.expect_end();
    return Instance::two_sided(cls, std::move(residents), std::move(caps), std::move(hospitals));
}

Instance parse_houses(ProblemClass cls, Reader& in)
{
    const auto head = in.header(2);
    const int n1 = to_count(head[0], in.header_line());
    const int n2 = to_count(head[1], in.header_line());
    auto applicants = first_group_lists(in, n1, n2, "applicant");
    std::vector<int> caps;
    for (int j = 1; j <= n2; ++j) {
        auto [parts, line] = in.record(j, "house");
        if (parts.size() == 2 && trim(parts[1]).empty())
            parts.pop_back();
        if (parts.size() != 1)
            throw ParseError(Kind::malformed_line, line, "expected 'id: capacity'");
        caps.push_back(to_capacity(parts[0], line));
    }
    in.expect_end();
    return Instance::house_allocation(cls, std::move(applicants), std::move(caps));
}

Instance parse_spa(ProblemClass cls, Reader& in)
{
    const auto head = in.header(3);
    const int ns = to_count(head[0], in.header_line());
    const int np = to_count(head[1], in.header_line());
    const int nl = to_count(head[2], in.header_line());
    auto students = first_group_lists(in, ns, np, "student");
    std::vector<int> lcaps;
    std::vector<PreferenceList> lprefs;
    for (int k = 1; k <= nl; ++k) {
        auto [parts, line] = in.record(k, "lecturer");
        if (parts.size() > 2)
            throw ParseError(Kind::malformed_line, line, "expected 'id: capacity: preferences'");
        lcaps.push_back(to_capacity(parts[0], line));
        lprefs.push_back(parts.size() == 2 ? parse_prefs(parts[1], ns, line) : PreferenceList{});
    }
    std::vector<int> pcaps, owner;
    for (int j = 1; j <= np; ++j) {
        auto [parts, line] = in.record(j, "project");
        if (parts.size() != 2)
            throw ParseError(Kind::malformed_line, line, "expected 'id: capacity: lecturer'");
        pcaps.push_back(to_capacity(parts[0], line));
        const long l = to_number(trim(parts[1]), line);
        if (l < 1 || l > nl)
            throw ParseError(Kind::dangling_reference, line, "unknown lecturer " + std::to_string(l));
        owner.push_back(static_cast<int>(l) - 1);
    }
    in.expect_end();
    return Instance::spa(cls, std::move(students), std::move(pcaps), std::move(owner), std::move(lcaps),
                         std::move(lprefs));
}

std::string format_prefs(const PreferenceList& p, std::string_view sep_after)
{
    std::string out;
    bool first = true;
    for (const auto& g : p.groups()) {
        if (!first && sep_after.empty())
            out += ' ';
        first = false;
        if (g.size() == 1) {
            out += std::to_string(g[0] + 1);
        } else {
            out += '(';
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (i)
                    out += ' ';
                out += std::to_string(g[i] + 1);
            }
            out += ')';
        }
        out += sep_after;
    }
    return out;
}

std::string record_line(int id, const std::vector<std::string>& fields)
{
    std::string out = std::to_string(id) + ":";
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (!fields[i].empty())
            out += " " + fields[i];
        if (i + 1 < fields.size())
            out += ":";
    }
    return out + "\n";
}

}  // namespace

Instance parse_instance(ProblemClass cls, std::string_view text)
{
    std::string normalized(text);
    std::erase(normalized, '\r');
    Reader in(normalized);
    try {
        switch (cls) {
        case ProblemClass::SR:
            return parse_roommates(in);
        case ProblemClass::HR:
        case ProblemClass::SM:
            return parse_two_sided(cls, in);
        case ProblemClass::HA:
        case ProblemClass::CHA:
            return parse_houses(cls, in);
        case ProblemClass::SPA:
        case ProblemClass::SPAS:
            return parse_spa(cls, in);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const DomainError& e) {
        throw ParseError(Kind::invalid_instance, 0, e.what());
    }
    throw ParseError(Kind::invalid_instance, 0, "unknown problem class");
}

std::string serialize_instance(const Instance& inst)
{
    const auto& first = inst.first();
    std::string out;
    switch (inst.problem_class()) {
    case ProblemClass::SR: {
        // Each entry is followed by a space; the final line is right-trimmed.
        out = std::to_string(first.size()) + "\n";
        for (int i = 0; i < first.size(); ++i) {
            std::string line = format_prefs(first.prefs[i], " ");
            if (i + 1 < first.size())
                out += line + "\n";
            else
                out += trim(line);
        }
        if (first.size() <= 1)
            out = trim(out) + "\n";
        return out;
    }
    case ProblemClass::HR:
    case ProblemClass::SM:
        out = std::to_string(first.size()) + " " + std::to_string(inst.second().size()) + "\n";
        for (int i = 0; i < first.size(); ++i)
            out += record_line(i + 1, {format_prefs(first.prefs[i], "")});
        for (int j = 0; j < inst.second().size(); ++j)
            out += record_line(j + 1, {std::to_string(inst.second().capacity[j]),
                                       format_prefs(inst.second().prefs[j], "")});
        return out;
    case ProblemClass::HA:
    case ProblemClass::CHA:
        out = std::to_string(first.size()) + " " + std::to_string(inst.second().size()) + "\n";
        for (int i = 0; i < first.size(); ++i)
            out += record_line(i + 1, {format_prefs(first.prefs[i], "")});
        for (int j = 0; j < inst.second().size(); ++j)
            out += record_line(j + 1, {std::to_string(inst.second().capacity[j])});
        return out;
    case ProblemClass::SPA:
    case ProblemClass::SPAS:
        out = std::to_string(first.size()) + " " + std::to_string(inst.second().size()) + " " +
              std::to_string(inst.third().size()) + "\n";
        for (int i = 0; i < first.size(); ++i)
            out += record_line(i + 1, {format_prefs(first.prefs[i], "")});
        for (int k = 0; k < inst.third().size(); ++k)
            out += record_line(k + 1, {std::to_string(inst.third().capacity[k]),
                                       format_prefs(inst.third().prefs[k], "")});
        for (int j = 0; j < inst.second().size(); ++j)
            out += record_line(j + 1, {std::to_string(inst.second().capacity[j]),
                                       std::to_string(inst.owner(j) + 1)});
        return out;
    }
    return out;
}

const RoleProperties& InstanceProperties::role(Role r) const
{
    for (const auto& p : roles)
        if (p.role == r)
            return p;
    throw DomainError("instance has no " + std::string(to_string(r)) + " group");
}

namespace {

RoleProperties describe(const AgentGroup& g, int full_length)
{
    RoleProperties p;
    p.role = g.role;
    p.count = g.size();
    for (int c : g.capacity)
        p.total_capacity += c;
    p.has_lists = std::any_of(g.prefs.begin(), g.prefs.end(), [](const auto& l) { return !l.empty(); });
    p.ties = std::any_of(g.prefs.begin(), g.prefs.end(), [](const auto& l) { return l.has_ties(); });
    p.complete = g.ranks() && std::all_of(g.prefs.begin(), g.prefs.end(),
                                          [&](const auto& l) { return l.length() == full_length; });
    return p;
}

}  // namespace

InstanceProperties classify(const Instance& inst)
{
    InstanceProperties props;
    const auto cls = inst.problem_class();
    props.problem_class = cls;
    const int n1 = inst.first().size();
    const int n2 = inst.second().size();
    if (cls == ProblemClass::SR) {
        props.roles.push_back(describe(inst.first(), n1 - 1));
    } else {
        props.roles.push_back(describe(inst.first(), n2));
        props.roles.push_back(describe(inst.second(), n1));
        if (is_spa(cls))
            props.roles.push_back(describe(inst.third(), n1));
    }
    for (const auto& r : props.roles)
        props.ties_present = props.ties_present || r.ties;
    for (const auto& g : {&inst.second(), &inst.third()})
        for (int c : g->capacity)
            props.unit_capacities = props.unit_capacities && c == 1;
    props.sm_detected = is_two_sided(cls) && n1 == n2 && props.unit_capacities;
    props.lecturer_lists_present = inst.lecturer_prefs_present();
    return props;
}

}  // namespace matchkit
