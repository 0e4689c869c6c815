#include "fanozl/catalog.hpp"
#include "fanozl/dsl.hpp"
#include "fanozl/parallel.hpp"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fanozl {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open catalog: " + path);
    std::vector<CatalogEntry> entries;
    std::set<std::string> ids;
    std::string line;
    CatalogEntry cur;
    bool open = false;
    int lineno = 0;
    auto flush = [&]() {
        if (!open) return;
        if (!ids.insert(cur.id).second)
            throw std::invalid_argument("catalog: duplicate id " + cur.id);
        if (cur.spec_dsl.empty() && cur.quiver_path.empty())
            throw std::invalid_argument("catalog: entry " + cur.id +
                                        " has no presentation");
        if (!cur.spec_dsl.empty()) {
            ParsedSpec ps = parse_spec(cur.spec_dsl);  // pre-parse, validates
            if ((int)ps.X.size() != cur.rho)
                throw std::invalid_argument(
                    "catalog: entry " + cur.id +
                    ": rho != number of ambient factors");
        }
        entries.push_back(cur);
        cur = CatalogEntry{};
        open = false;
    };
    while (std::getline(in, line)) {
        lineno++;
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[' && s.back() == ']') {
            flush();
            cur.id = strip(s.substr(1, s.size() - 2));
            open = true;
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos || !open)
            throw std::invalid_argument("catalog: parse error at line " +
                                        std::to_string(lineno) + ": " + s);
        std::string key = strip(s.substr(0, eq));
        std::string val = strip(s.substr(eq + 1));
        auto num = [&]() -> long {
            try {
                size_t used = 0;
                long v = std::stol(val, &used);
                if (used != val.size()) throw std::invalid_argument(val);
                return v;
            } catch (...) {
                throw std::invalid_argument("catalog: entry " + cur.id +
                                            ": bad integer for '" + key +
                                            "' at line " +
                                            std::to_string(lineno));
            }
        };
        if (key == "label") cur.label = val;
        else if (key == "rho") cur.rho = (int)num();
        else if (key == "spec") cur.spec_dsl = val;
        else if (key == "quiver") cur.quiver_path = val;
        else if (key == "h0mK") cur.h0mK = num();
        else if (key == "vol") cur.vol = num();
        else if (key == "chiT") cur.chiT = num();
        else if (key == "h11") cur.h11 = num();
        else if (key == "h21") cur.h21 = num();
        else if (key == "h31") cur.h31 = num();
        else if (key == "h22") cur.h22 = num();
        else if (key == "desc") cur.desc = val;
        else if (key == "source") cur.source = val;
        else if (key.rfind("ext_", 0) == 0) cur.external[key.substr(4)] = val;
        else
            throw std::invalid_argument("catalog: entry " + cur.id +
                                        ": unknown field '" + key + "'");
    }
    flush();
    return entries;
}

bool Selector::matches(const CatalogEntry& e) const {
    if (rho != 0 && e.rho != rho) return false;
    if (!all && !ids.empty())
        return std::find(ids.begin(), ids.end(), e.id) != ids.end();
    return true;
}

ZeroLocusSpec entry_spec(const CatalogEntry& e, const std::string& data_dir) {
    if (!e.spec_dsl.empty()) {
        ParsedSpec ps = parse_spec(e.spec_dsl);
        return {ps.X, ps.F};
    }
    QuiverDatum d = load_quiver(data_dir + "/" + e.quiver_path);
    return to_zero_locus(d);
}

namespace {

void diff_field(EntryResult& r, const char* name,
                const std::optional<long>& want, const Int& got) {
    if (!want) return;
    if (Int(*want) != got)
        r.diffs.push_back({name, *want, to_ll(got)});
}

void diff_hodge(EntryResult& r, const char* name,
                const std::optional<long>& want, const Interval& got) {
    if (!want) return;
    if (!got.exact()) {
        r.indeterminate = true;
        r.diffs.push_back({std::string(name) + " (indeterminate)", *want,
                           got.lo == got.hi ? to_ll(got.lo) : -1});
        return;
    }
    if (Int(*want) != got.lo)
        r.diffs.push_back({name, *want, to_ll(got.lo)});
}

}  // namespace

VerifyReport verify(const std::vector<CatalogEntry>& entries,
                    const Selector& sel, const std::string& data_dir) {
    std::vector<const CatalogEntry*> selected;
    for (const auto& e : entries)
        if (sel.matches(e)) selected.push_back(&e);
    VerifyReport report;
    report.entries.resize(selected.size());
    parallel_for(selected.size(), [&](size_t i) {
        const CatalogEntry& e = *selected[i];
        EntryResult& r = report.entries[i];
        r.id = e.id;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ZeroLocusSpec spec = entry_spec(e, data_dir);
            r.report = invariants(spec);
            diff_field(r, "h0mK", e.h0mK, r.report.h0_minus_K);
            diff_field(r, "vol", e.vol, r.report.volume);
            diff_field(r, "chiT", e.chiT, r.report.chi_tangent);
            if (r.report.dim == 4) {
                diff_hodge(r, "h11", e.h11, r.report.hodge.at(1, 1));
                diff_hodge(r, "h21", e.h21, r.report.hodge.at(2, 1));
                diff_hodge(r, "h31", e.h31, r.report.hodge.at(3, 1));
                diff_hodge(r, "h22", e.h22, r.report.hodge.at(2, 2));
                if (!r.report.hodge.determinate) r.indeterminate = true;
            }
            r.pass = r.diffs.empty() && !r.indeterminate;
        } catch (const std::exception& ex) {
            r.error = ex.what();
            r.pass = false;
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
    });
    return report;
}

std::string report_csv(const VerifyReport& r) {
    std::ostringstream os;
    os << "id,pass,h0mK,vol,chiT,h11,h21,h31,h22,euler,mismatches\n";
    for (const auto& e : r.entries) {
        os << e.id << "," << (e.pass ? "PASS" : "FAIL");
        if (e.error.empty()) {
            auto hv = [&](int p, int q) -> std::string {
                if (e.report.dim != 4) return "";
                const Interval& iv = e.report.hodge.at(p, q);
                if (!iv.exact())
                    return "[" + iv.lo.get_str() + ";" + iv.hi.get_str() + "]";
                return iv.lo.get_str();
            };
            os << "," << e.report.h0_minus_K.get_str() << ","
               << e.report.volume.get_str() << ","
               << e.report.chi_tangent.get_str() << "," << hv(1, 1) << ","
               << hv(2, 1) << "," << hv(3, 1) << "," << hv(2, 2) << ","
               << e.report.euler.get_str() << ",";
            for (size_t i = 0; i < e.diffs.size(); ++i)
                os << (i ? " " : "") << e.diffs[i].field;
        } else {
            os << ",,,,,,,,,error: " << e.error;
        }
        os << "\n";
    }
    return os.str();
}

std::string report_json(const InvariantReport& r) {
    nlohmann::json j;
    j["dim"] = r.dim;
    j["minusK"] = r.minus_K;
    j["fano"] = r.fano;
    j["h0mK"] = to_ll(r.h0_minus_K);
    if (r.h0_is_chi) j["h0mK_is_chi"] = true;
    j["vol"] = to_ll(r.volume);
    j["chiT"] = to_ll(r.chi_tangent);
    j["euler"] = to_ll(r.euler);
    if (r.dim == 4) {
        nlohmann::json h;
        auto put = [&](const char* k, const Interval& iv) {
            if (iv.exact()) h[k] = to_ll(iv.lo);
            else h[k] = {to_ll(iv.lo), to_ll(iv.hi)};
        };
        put("h11", r.hodge.at(1, 1));
        put("h21", r.hodge.at(2, 1));
        put("h31", r.hodge.at(3, 1));
        put("h22", r.hodge.at(2, 2));
        h["determinate"] = r.hodge.determinate;
        j["hodge"] = h;
    }
    return j.dump();
}

std::string report_json(const VerifyReport& r) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : r.entries) {
        nlohmann::json j;
        j["id"] = e.id;
        j["pass"] = e.pass;
        if (!e.error.empty()) j["error"] = e.error;
        if (e.indeterminate) j["indeterminate"] = true;
        if (!e.diffs.empty()) {
            nlohmann::json d = nlohmann::json::array();
            for (const auto& f : e.diffs)
                d.push_back({{"field", f.field},
                             {"expected", f.expected},
                             {"computed", f.computed}});
            j["diffs"] = d;
        }
        if (e.error.empty())
            j["report"] = nlohmann::json::parse(report_json(e.report));
        j["seconds"] = e.seconds;
        arr.push_back(j);
    }
    return arr.dump(2);
}

}  // namespace fanozl
