#include "anisocalc/decision.hpp"

#include <algorithm>

namespace anisocalc {

const char* to_string(Verdict v) { return v == Verdict::Covered ? "COVERED" : "NOT_COVERED"; }

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

Decision Decision::from_trace(std::vector<TraceEntry> trace) {
  Decision d;
  d.trace = std::move(trace);
  d.settle();
  return d;
}

const TraceEntry* Decision::first_failure() const {
  for (const auto& e : trace)
    if (e.status == Status::Fail) return &e;
  return nullptr;
}

void Decision::add(std::string label, std::string anchor, bool ok, std::string detail) {
  trace.push_back({std::move(label), std::move(anchor), ok ? Status::Pass : Status::Fail, std::move(detail)});
  settle();
}

void Decision::skip(std::string label, std::string anchor, std::string detail) {
  trace.push_back({std::move(label), std::move(anchor), Status::NotApplicable, std::move(detail)});
}

void Decision::settle() {
  bool ok = std::none_of(trace.begin(), trace.end(), [](const auto& e) { return e.status == Status::Fail; });
  verdict = ok ? Verdict::Covered : Verdict::NotCovered;
}

}  // namespace anisocalc
