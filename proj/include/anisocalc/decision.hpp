#pragma once

#include <string>
#include <vector>

namespace anisocalc {

enum class Verdict { Covered, NotCovered };
enum class Status { Pass, Fail, NotApplicable };

const char* to_string(Verdict v);
const char* to_string(Status s);

struct TraceEntry {
  std::string label;
  std::string anchor;
  Status status = Status::Pass;
  std::string detail;
};

/// COVERED iff every applicable trace entry passed.
struct Decision {
  Verdict verdict = Verdict::NotCovered;
  std::vector<TraceEntry> trace;

  static Decision from_trace(std::vector<TraceEntry> trace);

  bool covered() const { return verdict == Verdict::Covered; }
  const TraceEntry* first_failure() const;
  void add(std::string label, std::string anchor, bool ok, std::string detail = {});
  void skip(std::string label, std::string anchor, std::string detail = {});
  /// Recomputes the verdict from the trace.
  void settle();
};

}  // namespace anisocalc
