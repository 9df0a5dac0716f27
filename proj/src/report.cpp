#include "qtwist/report.hpp"

#include <sstream>

#include "qtwist/errors.hpp"

namespace qtw {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skip: return "skip";
    }
    return "?";
}

void VerificationReport::add(CheckResult r) { checks_.push_back(std::move(r)); }

void VerificationReport::pass(const std::string& name, const std::string& note) {
    add({name, CheckStatus::pass, std::nullopt, note});
}

void VerificationReport::fail(const std::string& name, Witness w, const std::string& note) {
    add({name, CheckStatus::fail, std::move(w), note});
}

void VerificationReport::skip(const std::string& name, const std::string& note) {
    add({name, CheckStatus::skip, std::nullopt, note});
}

void VerificationReport::check(const std::string& name, bool ok, Witness w,
                               const std::string& note) {
    if (ok)
        pass(name, note);
    else
        fail(name, std::move(w), note);
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
    for (CheckResult r : other.checks_) {
        r.name = prefix + r.name;
        checks_.push_back(std::move(r));
    }
    for (auto it = other.extracted_.begin(); it != other.extracted_.end(); ++it)
        extracted_[prefix + it.key()] = it.value();
}

void VerificationReport::attach(const std::string& key, nlohmann::ordered_json data) {
    extracted_[key] = std::move(data);
}

bool VerificationReport::all_passed() const { return fail_count() == 0; }

int VerificationReport::fail_count() const {
    int n = 0;
    for (const auto& c : checks_)
        if (c.status == CheckStatus::fail) ++n;
    return n;
}

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["title"] = title_;
    j["all_passed"] = all_passed();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["status"] = to_string(c.status);
        if (c.witness) {
            e["witness"] = {{"location", c.witness->location},
                            {"expected", c.witness->expected},
                            {"actual", c.witness->actual}};
        }
        if (!c.note.empty()) e["note"] = c.note;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    if (!extracted_.empty()) j["extracted"] = extracted_;
    return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object() || j.value("schema", 0) != 1)
        throw Error("report: unsupported schema");
    VerificationReport r(j.value("title", std::string{}));
    for (const auto& e : j.at("checks")) {
        CheckResult c;
        c.name = e.at("name").get<std::string>();
        std::string st = e.at("status").get<std::string>();
        if (st == "pass")
            c.status = CheckStatus::pass;
        else if (st == "fail")
            c.status = CheckStatus::fail;
        else if (st == "skip")
            c.status = CheckStatus::skip;
        else
            throw Error("report: unknown status '" + st + "'");
        if (e.contains("witness")) {
            const auto& w = e["witness"];
            c.witness = Witness{w.at("location").get<std::string>(),
                                w.at("expected").get<std::string>(),
                                w.at("actual").get<std::string>()};
        }
        c.note = e.value("note", std::string{});
        r.add(std::move(c));
    }
    if (j.contains("extracted")) r.extracted_ = j["extracted"];
    return r;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << "== " << title_ << " ==\n";
    for (const auto& c : checks_) {
        os << "[" << to_string(c.status) << "] " << c.name;
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
        if (c.witness) {
            os << "    at:       " << c.witness->location << "\n";
            os << "    expected: " << c.witness->expected << "\n";
            os << "    actual:   " << c.witness->actual << "\n";
        }
    }
    if (!extracted_.empty()) os << "extracted: " << extracted_.dump(2) << "\n";
    int f = fail_count();
    os << (f == 0 ? "all checks passed" : std::to_string(f) + " check(s) FAILED");
    if (elapsed_seconds_ >= 0.0) os << "  [" << elapsed_seconds_ << " s]";
    os << "\n";
    return os.str();
}

} // namespace qtw
