#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bcct/errors.hpp"

namespace bcct::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json parse_file(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open " + file.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in " + file.string() + ": " + e.what());
    }
}

// inline object, or a path relative to base
json resolve(const json& entry, const fs::path& base) {
    if (entry.is_string()) return parse_file(base / entry.get<std::string>());
    return entry;
}

double angle_scale(const json& j) {
    const auto units = j.value("units", std::string("turns"));
    if (units == "turns") return two_pi;
    if (units == "radians") return 1.0;
    throw ConfigError("unknown angle units: " + units);
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing field: ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad field ") + key + ": " + e.what());
    }
}

BeurlingCarlesonSet set_from(const json& j) {
    const double s = angle_scale(j);
    std::vector<Arc> gaps;
    for (const auto& g : field<std::vector<std::vector<double>>>(j, "gaps")) {
        if (g.size() != 2) throw ConfigError("a gap is a pair [start, end]");
        double a = s * g[0], b = s * g[1];
        if (a < 0.0 || a >= two_pi) {
            const double shift = a - wrap_angle(a);
            a -= shift;
            b -= shift;
        }
        gaps.push_back(Arc::from_endpoints(a, b));
    }
    std::sort(gaps.begin(), gaps.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
    std::optional<TailCertificate> tail;
    if (j.contains("tail")) tail = TailCertificate{field<double>(j["tail"], "bound"), j["tail"].value("threshold", 1.0)};
    return validate_set(std::move(gaps), tail);
}

WeightSpec weight_from(const json& j) {
    const double s = angle_scale(j);
    WeightSpec w;
    w.levels = field<std::vector<double>>(j, "levels");
    if (j.contains("bumps"))
        for (const auto& b : j["bumps"])
            w.bumps.push_back({s * field<double>(b, "center"), s * field<double>(b, "half_width"),
                               field<double>(b, "amplitude")});
    return w;
}

}  // namespace

BeurlingCarlesonSet load_set(const fs::path& file) { return set_from(parse_file(file)); }

WeightSpec load_weight(const fs::path& file) { return weight_from(parse_file(file)); }

SuiteContext load_config(const fs::path& file) {
    const json j = parse_file(file);
    const fs::path base = file.parent_path();
    SuiteContext ctx = default_context();
    if (j.contains("set")) ctx.set = set_from(resolve(j["set"], base));
    if (j.contains("sets")) {
        ctx.sets.clear();
        for (const auto& e : j["sets"]) {
            const json s = resolve(e, base);
            std::string name = s.value("name", e.is_string() ? fs::path(e.get<std::string>()).stem().string() : "set");
            ctx.sets.push_back({name, set_from(s)});
        }
    }
    if (j.contains("weight")) ctx.weight = weight_from(resolve(j["weight"], base));
    if (j.contains("divisor_weight")) ctx.divisor_weight = weight_from(resolve(j["divisor_weight"], base));
    if (j.contains("measure")) {
        const json m = resolve(j["measure"], base);
        const double s = angle_scale(m);
        ctx.atoms.clear();
        ctx.blaschke.clear();
        if (m.contains("atoms"))
            for (const auto& a : m["atoms"]) {
                const auto part = a.value("part", std::string("K"));
                if (part != "C" && part != "K") throw ConfigError("atom part must be C or K");
                ctx.atoms.push_back({wrap_angle(s * field<double>(a, "angle")), field<double>(a, "mass"),
                                     part == "C" ? MeasurePart::C : MeasurePart::K});
            }
        if (m.contains("blaschke"))
            for (const auto& z : m["blaschke"]) {
                const auto v = z.get<std::vector<double>>();
                if (v.size() != 2) throw ConfigError("a Blaschke zero is [re, im]");
                ctx.blaschke.emplace_back(v[0], v[1]);
            }
    }
    if (j.contains("coefficients")) {
        const auto& c = j["coefficients"];
        if (c.is_string()) {
            ctx.coefficients = read_coefficients_csv(base / c.get<std::string>());
        } else {
            std::vector<cplx> v;
            for (double x : c.get<std::vector<double>>()) v.emplace_back(x, 0.0);
            ctx.coefficients = AnalyticSeries(std::move(v));
        }
    }
    if (j.contains("k_max")) ctx.k_max = field<int>(j, "k_max");
    if (j.contains("seed")) ctx.seed = field<std::uint64_t>(j, "seed");
    return ctx;
}

AnalyticSeries read_coefficients_csv(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open " + file.string());
    std::vector<cplx> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double re = 0.0, im = 0.0;
        if (!(ss >> re)) {
            if (first) {
                first = false;
                continue;
            }
            throw ConfigError("bad coefficient line in " + file.string());
        }
        first = false;
        ss >> im;
        out.emplace_back(re, im);
    }
    if (out.empty()) throw ConfigError("no coefficients in " + file.string());
    return AnalyticSeries(std::move(out));
}

std::string number(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string quote(const std::string& s) { return json(s).dump(); }

void write_csv(const fs::path& file, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(file);
    if (!out) throw ConfigError("cannot write " + file.string());
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << number(r[i]);
        out << '\n';
    }
}

std::string verdict_json(const SuiteReport& r) {
    std::ostringstream o;
    o << "{\n  \"suite\": " << quote(r.suite) << ",\n  \"pass\": " << (r.pass() ? "true" : "false")
      << ",\n  \"checks\": [";
    for (std::size_t i = 0; i < r.checks.size(); ++i) {
        const auto& c = r.checks[i];
        o << (i ? "," : "") << "\n    {\"name\": " << quote(c.name) << ", \"value\": "
          << (c.timing ? "null" : number(c.value)) << ", \"relation\": " << quote(c.relation)
          << ", \"threshold\": " << number(c.threshold) << ", \"pass\": " << (c.pass ? "true" : "false");
        if (c.timing) o << ", \"timing\": true";
        if (!c.note.empty()) o << ", \"note\": " << quote(c.note);
        o << "}";
    }
    o << "\n  ]\n}\n";
    return o.str();
}

std::string timing_json(const SuiteReport& r) {
    std::ostringstream o;
    o << "{\"suite\": " << quote(r.suite) << ", \"seconds\": " << number(r.seconds);
    for (const auto& c : r.checks)
        if (c.timing) o << ", " << quote(c.name) << ": " << number(c.value);
    o << "}\n";
    return o.str();
}

void write_report(const fs::path& dir, const SuiteReport& r) {
    fs::create_directories(dir);
    {
        std::ofstream out(dir / (r.suite + ".json"));
        if (!out) throw ConfigError("cannot write to " + dir.string());
        out << verdict_json(r);
    }
    std::ofstream(dir / (r.suite + ".timing.json")) << timing_json(r);
    for (const auto& t : r.tables) write_csv(dir / (r.suite + "_" + t.name + ".csv"), t.columns, t.rows);
}

std::vector<std::pair<std::string, bool>> read_verdicts(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw ConfigError("no report directory " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto name = e.path().filename().string();
        if (e.path().extension() == ".json" && name.find(".timing.") == std::string::npos) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<std::pair<std::string, bool>> out;
    for (const auto& f : files) {
        const json j = parse_file(f);
        if (!j.contains("suite")) continue;
        out.emplace_back(field<std::string>(j, "suite"), field<bool>(j, "pass"));
    }
    return out;
}

}  // namespace bcct::io
