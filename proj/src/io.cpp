#include "curvjet/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "curvjet/error.hpp"

namespace curvjet {

namespace {

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
    return doc.at(key);
}

template <class T>
T get_as(const Json& doc, const char* key) {
    try {
        return field(doc, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("field '") + key + "': " + e.what());
    }
}

void require_same_space(const Space& expected, const Space& got, const char* what) {
    if (!(expected == got)) throw InvalidArgument(std::string(what) + " lives over a different space");
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace

Json space_to_json(const Space& space) {
    Json doc;
    doc["dim"] = space.dim();
    doc["signature"] = std::vector<int>(space.signature().begin(), space.signature().end());
    return doc;
}

Space space_from_json(const Json& doc) {
    const int dim = get_as<int>(doc, "dim");
    const auto sig = get_as<std::vector<int>>(doc, "signature");
    if (static_cast<int>(sig.size()) != dim) throw InvalidArgument("signature length must equal dim");
    return Space(sig);
}

Json tensor_to_json(const Tensor& t) {
    Json doc = space_to_json(t.space());
    doc["valence"] = t.valence();
    doc["data"] = std::vector<double>(t.data().begin(), t.data().end());
    return doc;
}

Tensor tensor_from_json(const Json& doc) {
    Space space = space_from_json(doc);
    const int valence = get_as<int>(doc, "valence");
    auto data = get_as<std::vector<double>>(doc, "data");
    for (double v : data) {
        if (!std::isfinite(v)) throw InvalidArgument("tensor data must be finite");
    }
    return Tensor(std::move(space), valence, std::move(data));
}

Json jet_to_json(const TwoJet& jet) {
    Json doc = one_jet_to_json(jet.R, jet.dR);
    doc["d2R"] = tensor_to_json(jet.d2R);
    return doc;
}

Json one_jet_to_json(const Tensor& R, const Tensor& dR) {
    Json doc = space_to_json(R.space());
    doc["R"] = tensor_to_json(R);
    doc["dR"] = tensor_to_json(dR);
    return doc;
}

JetDocument jet_from_json(const Json& doc) {
    const Space space = space_from_json(doc);
    JetDocument out{tensor_from_json(field(doc, "R")), tensor_from_json(field(doc, "dR")), std::nullopt};
    require_same_space(space, out.R.space(), "R");
    require_same_space(space, out.dR.space(), "dR");
    if (out.R.valence() != 4) throw InvalidArgument("R must have valence 4");
    if (out.dR.valence() != 5) throw InvalidArgument("dR must have valence 5");
    if (doc.contains("d2R") && !doc.at("d2R").is_null()) {
        out.d2R = tensor_from_json(doc.at("d2R"));
        require_same_space(space, out.d2R->space(), "d2R");
        if (out.d2R->valence() != 6) throw InvalidArgument("d2R must have valence 6");
    }
    return out;
}

Json polymetric_to_json(const PolyMetric& g) {
    Json doc = space_to_json(g.space());
    doc["degree"] = g.degree();
    Json records = Json::array();
    const int n = g.space().dim();
    const MonomialTable& table = *g.table();
    const int count = table.count_upto(g.degree());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const auto coeffs = g.entry(i, j).coefficients();
            for (int m = 0; m < count; ++m) {
                if (coeffs[static_cast<std::size_t>(m)] == 0.0) continue;
                const auto e = table.exponents(m);
                records.push_back({{"i", i}, {"j", j}, {"exponents", std::vector<int>(e.begin(), e.end())},
                                   {"coefficient", coeffs[static_cast<std::size_t>(m)]}});
            }
        }
    doc["records"] = std::move(records);
    return doc;
}

PolyMetric polymetric_from_json(const Json& doc) {
    const Space space = space_from_json(doc);
    const int n = space.dim();
    const int degree = get_as<int>(doc, "degree");
    if (degree < 0) throw InvalidArgument("degree must be non-negative");
    auto table = std::make_shared<const MonomialTable>(n, degree);
    std::vector<TruncPoly> entries(static_cast<std::size_t>(n * n), TruncPoly(table, degree));
    // Records may list one triangle only; the other is mirrored unless given explicitly.
    std::vector<bool> given(static_cast<std::size_t>(n * n), false);
    const Json& records = field(doc, "records");
    if (!records.is_array()) throw InvalidArgument("records must be a list");
    for (const Json& r : records) {
        const int i = get_as<int>(r, "i");
        const int j = get_as<int>(r, "j");
        const auto e = get_as<std::vector<int>>(r, "exponents");
        const double c = get_as<double>(r, "coefficient");
        if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidArgument("record index out of range");
        if (static_cast<int>(e.size()) != n) throw InvalidArgument("exponent vector length must equal dim");
        if (table->index_of(e) < 0) throw InvalidArgument("record exceeds the declared degree");
        TruncPoly& p = entries[static_cast<std::size_t>(i * n + j)];
        p.set_coefficient(e, p.coefficient(e) + c);
        given[static_cast<std::size_t>(i * n + j)] = true;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!given[static_cast<std::size_t>(i * n + j)] && given[static_cast<std::size_t>(j * n + i)]) {
                entries[static_cast<std::size_t>(i * n + j)] = entries[static_cast<std::size_t>(j * n + i)];
            }
        }
    return PolyMetric(space, std::move(entries));
}

Json report_to_json(const Report& report, const Json& config) {
    Json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["config"] = config;
    Json records = Json::array();
    for (const Record& r : report.records()) {
        Json rec{{"name", r.name}, {"residual", r.residual}, {"threshold", r.threshold}, {"pass", r.pass}};
        if (r.kind == CheckKind::Diagnostic) rec["kind"] = "diagnostic";
        if (!r.note.empty()) rec["note"] = r.note;
        records.push_back(std::move(rec));
    }
    doc["records"] = std::move(records);
    doc["pass"] = report.pass();
    return doc;
}

std::string report_to_text(const Report& report) {
    std::size_t width = 0;
    for (const Record& r : report.records()) width = std::max(width, r.name.size());
    std::ostringstream out;
    for (const Record& r : report.records()) {
        const char* verdict = r.kind == CheckKind::Diagnostic ? "info" : (r.pass ? "pass" : "FAIL");
        out << verdict << "  " << r.name << std::string(width - r.name.size() + 2, ' ') << format_double(r.residual);
        if (r.kind == CheckKind::Assert) out << "  (< " << format_double(r.threshold) << ")";
        if (!r.note.empty()) out << "  " << r.note;
        out << '\n';
    }
    out << (report.pass() ? "summary: pass" : "summary: FAIL") << '\n';
    return out.str();
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << text;
}

}  // namespace curvjet
