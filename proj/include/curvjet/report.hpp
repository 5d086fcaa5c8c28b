#pragma once

#include <string>
#include <vector>

namespace curvjet {

enum class CheckKind { Assert, Diagnostic };

struct Record {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = true;
    CheckKind kind = CheckKind::Assert;
    std::string note;
};

// Ordered list of named residuals. Diagnostics are reported but never fail the summary.
class Report {
public:
    void add(std::string name, double residual, double threshold, std::string note = {});
    void add_diagnostic(std::string name, double value, std::string note = {});
    // Keeps the worst residual per name, so seeded loops can call this repeatedly.
    void merge_max(std::string name, double residual, double threshold, std::string note = {});
    void append(const Report& other, const std::string& prefix = {});

    const std::vector<Record>& records() const { return records_; }
    const Record* find(const std::string& name) const;
    bool pass() const;
    bool empty() const { return records_.empty(); }

private:
    std::vector<Record> records_;
};

}  // namespace curvjet
