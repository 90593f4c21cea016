#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>

#include "qseries.hpp"

namespace qlift {

enum class Status { pass, fail, skipped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "?";
}

struct CheckReport {
  std::string id;
  std::string inputs;
  Index bound = 0;  // equality verified for all grid indices < bound
  Status status = Status::skipped;
  std::optional<Index> mismatch;
  std::string lhs, rhs;
  std::string reason;
  std::string note;
  double millis = 0;

  bool passed() const { return status == Status::pass; }

  std::string line() const {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f", millis);
    return id + "\t" + status_name(status) + "\t" + std::to_string(bound) + "\t" + ms;
  }

  std::string describe() const {
    std::string s = id + ": " + status_name(status) + " through " + std::to_string(bound);
    if (mismatch) s += ", first mismatch at " + std::to_string(*mismatch) + " (" + lhs + " vs " + rhs + ")";
    if (!reason.empty()) s += ", " + reason;
    if (!note.empty()) s += " [" + note + "]";
    return s;
  }
};

inline CheckReport skipped_report(std::string id, std::string inputs, std::string reason) {
  CheckReport r;
  r.id = std::move(id);
  r.inputs = std::move(inputs);
  r.status = Status::skipped;
  r.reason = std::move(reason);
  return r;
}

// exact comparison below min(lhs.prec, rhs.prec, limit)
inline CheckReport compare_report(std::string id, std::string inputs, const Series& lhs,
                                  const Series& rhs, Index limit = Series::kExact) {
  CheckReport r;
  r.id = std::move(id);
  r.inputs = std::move(inputs);
  Index b = std::min({lhs.prec(), rhs.prec(), limit});
  auto miss = first_mismatch(lhs, rhs, b);
  if (miss) {
    r.status = Status::fail;
    r.mismatch = miss;
    r.bound = *miss;
    r.lhs = lhs.coeff(*miss).str();
    r.rhs = rhs.coeff(*miss).str();
  } else {
    r.status = Status::pass;
    r.bound = b;
  }
  return r;
}

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace qlift
