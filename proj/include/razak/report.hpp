#pragma once

// Machine-readable run reports. The writer is deterministic: keys keep
// insertion order and floats are printed with 17 significant digits.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace razak {

enum class Relation { LessEqual, Equal, GreaterEqual, IsTrue };

const char* to_string(Relation r);

struct Invariant {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  Relation relation = Relation::LessEqual;
  bool pass = false;
};

/// Evaluates the relation; Equal is exact.
Invariant check(std::string name, double value, Relation relation, double bound);
Invariant check_true(std::string name, bool value);

class Report {
 public:
  using Value = std::variant<std::int64_t, double, std::string, bool>;

  explicit Report(std::string command) : command_(std::move(command)) {}

  void set(const std::string& key, Value value);
  void add(Invariant inv) { invariants_.push_back(std::move(inv)); }
  void add_file(const std::string& path) { files_.push_back(path); }

  const std::vector<Invariant>& invariants() const { return invariants_; }
  bool all_pass() const;

  std::string to_json() const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, Value>> config_;
  std::vector<Invariant> invariants_;
  std::vector<std::string> files_;
};

/// %.17g, or null for non-finite values.
std::string format_double(double v);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace razak
