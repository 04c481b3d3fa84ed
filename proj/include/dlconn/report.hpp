#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dlconn {

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

/// Structured outcome of one verification check. `statement` carries, in
/// plain words, the mathematical claim the check exercises, so a report
/// stream is readable on its own. Schema version "v1".
struct VerificationReport {
  std::string check_name;
  std::string statement;
  std::vector<std::pair<std::string, std::string>> parameters;
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> witnesses;
  std::int64_t runtime_ms = 0;

  static constexpr const char* kSchema = "v1";

  void param(const std::string& key, const std::string& value) {
    parameters.emplace_back(key, value);
  }
  void param(const std::string& key, long long value) {
    parameters.emplace_back(key, std::to_string(value));
  }

  void record_failure(const std::string& witness) {
    verdict = Verdict::Fail;
    witnesses.push_back(witness);
  }

  bool passed() const { return verdict == Verdict::Pass; }

  /// A fail verdict must come with at least one witness.
  bool well_formed() const {
    return verdict != Verdict::Fail || !witnesses.empty();
  }
};

/// Scope timer filling runtime_ms on destruction.
class ReportTimer {
 public:
  explicit ReportTimer(VerificationReport& r)
      : report_(r), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    auto end = std::chrono::steady_clock::now();
    report_.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start_)
            .count();
  }

 private:
  VerificationReport& report_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace dlconn
