#ifndef QTWIST_REPORT_HPP
#define QTWIST_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qtw {

enum class CheckStatus { pass, fail, skip };

std::string to_string(CheckStatus s);

// Enough context to reproduce a failure by hand: where it happened and the
// two values that were supposed to agree.
struct Witness {
    std::string location; // basis element, index pair, term, ...
    std::string expected;
    std::string actual;
};

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::optional<Witness> witness;
    std::string note; // informational detail, never affects pass/fail
};

// An ordered list of named check results plus any extracted data
// (presentations, twist terms).  JSON output is deterministic: insertion
// order is preserved and no volatile values (timings, pointers) are
// emitted.  Wall-clock timing is kept out of the JSON on purpose and shown
// only in the text rendering.
class VerificationReport {
  public:
    VerificationReport() = default;
    explicit VerificationReport(std::string title) : title_(std::move(title)) {}

    void add(CheckResult r);
    void pass(const std::string& name, const std::string& note = "");
    void fail(const std::string& name, Witness w, const std::string& note = "");
    void skip(const std::string& name, const std::string& note);
    // check() routes to pass/fail so call sites read as assertions
    void check(const std::string& name, bool ok, Witness w, const std::string& note = "");

    // appends every check of `other` with its name prefixed
    void merge(const VerificationReport& other, const std::string& prefix);

    void attach(const std::string& key, nlohmann::ordered_json data);

    bool all_passed() const;
    int fail_count() const;
    const std::vector<CheckResult>& checks() const { return checks_; }
    const std::string& title() const { return title_; }
    const nlohmann::ordered_json& extracted() const { return extracted_; }

    void set_elapsed_seconds(double s) { elapsed_seconds_ = s; }

    nlohmann::ordered_json to_json() const;
    static VerificationReport from_json(const nlohmann::ordered_json& j);
    std::string to_text() const;

  private:
    std::string title_;
    std::vector<CheckResult> checks_;
    nlohmann::ordered_json extracted_ = nlohmann::ordered_json::object();
    double elapsed_seconds_ = -1.0; // < 0 means "not measured"
};

} // namespace qtw

#endif
