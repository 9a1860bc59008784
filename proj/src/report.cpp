#include "shadowlab/report.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace shadowlab {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::InsufficientWindow: return "insufficient-window";
    case Status::Inapplicable: return "inapplicable";
  }
  return "fail";
}

VerificationReport& VerificationReport::param(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
  return *this;
}

VerificationReport& VerificationReport::witness(std::string key, std::string value) {
  witnesses.emplace_back(std::move(key), std::move(value));
  return *this;
}

VerificationReport& VerificationReport::fail(std::string reason) {
  status = Status::Fail;
  return witness("failure", std::move(reason));
}

namespace {

nlohmann::ordered_json record(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["anchor"] = r.anchor;
  auto params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  auto wit = nlohmann::ordered_json::array();
  for (const auto& [k, v] : r.witnesses) wit.push_back({k, v});
  j["witnesses"] = wit;
  j["status"] = to_string(r.status);
  if (r.seed) {
    j["seed"] = *r.seed;
  } else {
    j["seed"] = nullptr;
  }
  return j;
}

}  // namespace

std::string VerificationReport::to_machine() const { return record(*this).dump(); }

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "[" << to_string(status) << "] " << id << "\n";
  os << "  anchor: " << anchor << "\n";
  for (const auto& [k, v] : params) os << "  param " << k << " = " << v << "\n";
  for (const auto& [k, v] : witnesses) os << "  " << k << ": " << v << "\n";
  if (seed) os << "  seed: " << *seed << "\n";
  return os.str();
}

Status RunReport::overall() const {
  if (reports.empty()) return Status::Fail;
  for (const auto& r : reports) {
    if (!r.ok()) return Status::Fail;
  }
  return Status::Pass;
}

std::string RunReport::to_machine() const {
  std::string out;
  for (const auto& r : reports) out += r.to_machine() + "\n";
  nlohmann::ordered_json summary;
  summary["experiment"] = experiment;
  summary["reports"] = reports.size();
  summary["status"] = to_string(overall());
  out += summary.dump() + "\n";
  return out;
}

std::string RunReport::to_text() const {
  std::string out = "== " + experiment + " ==\n";
  for (const auto& r : reports) out += r.to_text();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", elapsed_ms);
  out += "overall: " + to_string(overall()) + " (" + std::to_string(reports.size()) +
         " reports, " + buf + " ms)\n";
  return out;
}

std::string join_points(const std::vector<Point>& pts) {
  std::string out = "(";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ", ";
    out += pts[i].str();
  }
  return out + ")";
}

}  // namespace shadowlab
