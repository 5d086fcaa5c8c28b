#include "curvjet/report.hpp"

#include <algorithm>
#include <cmath>

namespace curvjet {

namespace {

// NaN residuals never pass.
bool below(double residual, double threshold) { return residual < threshold; }

}  // namespace

void Report::add(std::string name, double residual, double threshold, std::string note) {
    records_.push_back({std::move(name), residual, threshold, below(residual, threshold), CheckKind::Assert,
                        std::move(note)});
}

void Report::add_diagnostic(std::string name, double value, std::string note) {
    records_.push_back({std::move(name), value, 0.0, true, CheckKind::Diagnostic, std::move(note)});
}

void Report::merge_max(std::string name, double residual, double threshold, std::string note) {
    auto it = std::find_if(records_.begin(), records_.end(), [&](const Record& r) { return r.name == name; });
    if (it == records_.end()) {
        add(std::move(name), residual, threshold, std::move(note));
        return;
    }
    if (std::isnan(residual) || residual > it->residual) it->residual = residual;
    it->threshold = threshold;
    it->pass = below(it->residual, threshold);
}

void Report::append(const Report& other, const std::string& prefix) {
    for (Record r : other.records_) {
        r.name = prefix + r.name;
        records_.push_back(std::move(r));
    }
}

const Record* Report::find(const std::string& name) const {
    auto it = std::find_if(records_.begin(), records_.end(), [&](const Record& r) { return r.name == name; });
    return it == records_.end() ? nullptr : &*it;
}

bool Report::pass() const {
    return std::all_of(records_.begin(), records_.end(),
                       [](const Record& r) { return r.kind == CheckKind::Diagnostic || r.pass; });
}

}  // namespace curvjet
