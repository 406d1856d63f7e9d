#include "razak/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "razak/errors.hpp"

namespace razak {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

std::string render(const Report::Value& v) {
  if (auto i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (auto d = std::get_if<double>(&v)) return format_double(*d);
  if (auto s = std::get_if<std::string>(&v)) return quote(*s);
  return std::get<bool>(v) ? "true" : "false";
}

}  // namespace

const char* to_string(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::Equal: return "==";
    case Relation::GreaterEqual: return ">=";
    case Relation::IsTrue: return "true";
  }
  return "?";
}

Invariant check(std::string name, double value, Relation relation, double bound) {
  Invariant inv{std::move(name), value, bound, relation, false};
  switch (relation) {
    case Relation::LessEqual: inv.pass = value <= bound; break;
    case Relation::Equal: inv.pass = value == bound; break;
    case Relation::GreaterEqual: inv.pass = value >= bound; break;
    case Relation::IsTrue: inv.pass = value != 0.0; break;
  }
  return inv;
}

Invariant check_true(std::string name, bool value) {
  return check(std::move(name), value ? 1.0 : 0.0, Relation::IsTrue, 1.0);
}

void Report::set(const std::string& key, Value value) {
  for (auto& [k, v] : config_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  config_.emplace_back(key, std::move(value));
}

bool Report::all_pass() const {
  for (const auto& inv : invariants_)
    if (!inv.pass) return false;
  return true;
}

std::string Report::to_json() const {
  std::ostringstream out;
  out << "{\n  \"command\": " << quote(command_) << ",\n  \"config\": {";
  for (std::size_t k = 0; k < config_.size(); ++k) {
    out << (k ? ",\n    " : "\n    ") << quote(config_[k].first) << ": " << render(config_[k].second);
  }
  out << (config_.empty() ? "},\n" : "\n  },\n");
  out << "  \"invariants\": [";
  for (std::size_t k = 0; k < invariants_.size(); ++k) {
    const auto& inv = invariants_[k];
    out << (k ? ",\n    " : "\n    ") << "{\"name\": " << quote(inv.name)
        << ", \"value\": " << format_double(inv.value) << ", \"relation\": " << quote(to_string(inv.relation))
        << ", \"bound\": " << format_double(inv.bound) << ", \"pass\": " << (inv.pass ? "true" : "false")
        << "}";
  }
  out << (invariants_.empty() ? "],\n" : "\n  ],\n");
  out << "  \"files\": [";
  for (std::size_t k = 0; k < files_.size(); ++k) out << (k ? ", " : "") << quote(files_[k]);
  out << "],\n  \"pass\": " << (all_pass() ? "true" : "false") << "\n}\n";
  return out.str();
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::ConfigError, "cannot write " + tmp.string());
    f << contents;
    f.flush();
    if (!f) throw Error(ErrorKind::ConfigError, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace razak
