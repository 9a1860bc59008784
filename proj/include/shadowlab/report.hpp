#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/point.hpp"
#include "shadowlab/rat.hpp"

namespace shadowlab {

enum class Status {
  Pass,
  Fail,
  InsufficientWindow,
  /// The claim does not apply to the given parameters (e.g. delta beyond the
  /// diameter of the space). Does not fail a run.
  Inapplicable,
};

std::string to_string(Status s);

/// One checked claim with its exact witnesses.
///
/// Params and witnesses are ordered key/value lists of serialized values so
/// that rendering is byte-stable.
struct VerificationReport {
  std::string id;
  std::string anchor;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, std::string>> witnesses;
  Status status = Status::Pass;
  std::optional<std::uint64_t> seed;

  VerificationReport() = default;
  VerificationReport(std::string id_, std::string anchor_)
      : id(std::move(id_)), anchor(std::move(anchor_)) {}

  VerificationReport& param(std::string key, std::string value);
  VerificationReport& param(std::string key, const Rat& value) { return param(std::move(key), value.str()); }
  VerificationReport& param(std::string key, std::int64_t value) {
    return param(std::move(key), std::to_string(value));
  }
  VerificationReport& witness(std::string key, std::string value);
  VerificationReport& witness(std::string key, const Rat& value) {
    return witness(std::move(key), value.str());
  }
  VerificationReport& witness(std::string key, const Point& value) {
    return witness(std::move(key), value.str());
  }
  VerificationReport& witness(std::string key, std::int64_t value) {
    return witness(std::move(key), std::to_string(value));
  }

  /// Sets status to Fail (keeps an earlier Fail) and records the reason.
  VerificationReport& fail(std::string reason);

  bool passed() const { return status == Status::Pass; }
  /// Pass or Inapplicable.
  bool ok() const { return status == Status::Pass || status == Status::Inapplicable; }

  /// Single-line JSON record {id, anchor, params, witnesses, status, seed}.
  std::string to_machine() const;
  std::string to_text() const;
};

/// Aggregated result of one CLI experiment.
struct RunReport {
  std::string experiment;
  std::vector<VerificationReport> reports;
  double elapsed_ms = 0.0;

  /// Pass iff every sub-report is ok(); an empty run fails.
  Status overall() const;
  /// JSON lines, one per report, then a summary record. No timing, so the
  /// output is byte-identical across reruns.
  std::string to_machine() const;
  std::string to_text() const;
};

std::string join_points(const std::vector<Point>& pts);

}  // namespace shadowlab
