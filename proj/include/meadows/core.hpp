#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace meadows {

/// Base class of every exception thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed value shape: wrong table dimensions, out-of-range indices.
struct format_error : error {
  using error::error;
};

/// Argument outside the mathematical domain of an operation.
struct domain_error : error {
  using error::error;
};

/// A configured carrier or ideal cap was exceeded.
struct size_error : error {
  using error::error;
};

/// An operation was invoked on a value that fails its hypothesis.
struct precondition_error : error {
  using error::error;
};

/// Failure in one of the text formats; carries the 1-based source line.
struct parse_error : error {
  int line;
  parse_error(int line_, const std::string& what_)
      : error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// Size caps enforced by constructions that can blow up.
struct limits {
  std::size_t ring_cap = 256;
  std::size_t ideal_cap = 64;
  std::size_t meadow_cap = 2048;
};

/// Dense n-by-n operation table over element indices 0..n-1.
class op_table {
 public:
  op_table() = default;
  explicit op_table(int n, int fill = 0)
      : n_(n), v_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  int operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * n_ + j]; }
  int& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * n_ + j]; }
  int size() const { return n_; }

  /// True when every entry is a valid element index.
  bool closed() const {
    for (int e : v_)
      if (e < 0 || e >= n_) return false;
    return true;
  }

  friend bool operator==(const op_table&, const op_table&) = default;

 private:
  int n_ = 0;
  std::vector<int> v_;
};

/// One violated law together with the elements witnessing the violation.
struct law_violation {
  std::string law;
  std::vector<std::string> witness;

  std::string to_string() const {
    std::string s = law;
    if (!witness.empty()) {
      s += " at (";
      for (std::size_t i = 0; i < witness.size(); ++i) {
        if (i) s += ", ";
        s += witness[i];
      }
      s += ")";
    }
    return s;
  }
};

/// Outcome of a validation scan; empty means every checked law held.
struct validation_report {
  std::vector<law_violation> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }

  void fail(std::string law, std::vector<std::string> witness = {}) {
    violations.push_back({std::move(law), std::move(witness)});
  }

  const law_violation& first() const { return violations.front(); }

  std::string summary() const {
    if (ok()) return "pass";
    std::string s;
    for (const auto& v : violations) {
      if (!s.empty()) s += "; ";
      s += v.to_string();
    }
    return s;
  }
};

}  // namespace meadows
