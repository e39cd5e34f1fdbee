#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace posh {

using Json = nlohmann::ordered_json;

/// Verdict of a decision procedure, with the first violated law and its
/// witness. Checks that have several equivalent characterizations record
/// each one under `forms`; `agree` is false when their verdicts differ.
struct CheckReport {
  std::string check;
  bool passed = true;
  std::string violation;
  Json witness;
  std::vector<CheckReport> forms;
  bool agree = true;
  Json details;
  std::optional<double> elapsed_ms;

  static CheckReport pass(std::string name) {
    CheckReport r;
    r.check = std::move(name);
    return r;
  }

  static CheckReport fail(std::string name, std::string law, Json witness = {}) {
    CheckReport r;
    r.check = std::move(name);
    r.passed = false;
    r.violation = std::move(law);
    r.witness = std::move(witness);
    return r;
  }

  /// Folds the forms' verdicts into this report. The headline verdict and
  /// witness come from the first failing form.
  CheckReport& reconcile() {
    agree = true;
    for (const auto& f : forms) {
      if (f.passed != forms.front().passed || !f.agree) agree = false;
    }
    if (forms.empty()) return *this;
    passed = forms.front().passed;
    if (!passed && violation.empty()) {
      for (const auto& f : forms) {
        if (!f.passed) {
          violation = f.check + ": " + f.violation;
          witness = f.witness;
          break;
        }
      }
    }
    return *this;
  }

  [[nodiscard]] bool all_forms_agree() const {
    if (!agree) return false;
    for (const auto& f : forms) {
      if (!f.all_forms_agree()) return false;
    }
    return true;
  }

  [[nodiscard]] Json to_json() const {
    Json j;
    j["check"] = check;
    j["verdict"] = passed ? "pass" : "fail";
    if (!passed) j["violation"] = violation;
    if (!witness.is_null()) j["witness"] = witness;
    if (!forms.empty()) {
      j["agree"] = agree;
      Json fs = Json::array();
      for (const auto& f : forms) fs.push_back(f.to_json());
      j["forms"] = std::move(fs);
    }
    if (!details.is_null()) j["details"] = details;
    if (elapsed_ms) j["timing_ms"] = *elapsed_ms;
    return j;
  }
};

inline CheckReport with_forms(std::string name, std::vector<CheckReport> forms) {
  CheckReport r = CheckReport::pass(std::move(name));
  r.forms = std::move(forms);
  r.reconcile();
  return r;
}

}  // namespace posh
