#include "ylab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "ylab/format.hpp"

namespace ylab {

std::string to_string(const Diagnostic& d) {
  if (d.line == 0) return d.message;
  return "line " + std::to_string(d.line) + ", column " + std::to_string(d.column) + ": " + d.message;
}

namespace {

struct Value;

struct Entry {
  std::string key;
  int line = 0, column = 0;
  std::shared_ptr<Value> value;
};

struct Value {
  enum class Type { number, string, boolean, array, table } type = Type::number;
  int line = 0, column = 0;
  double number = 0.0;
  std::string text;  // raw number text or string contents
  bool boolean = false;
  std::vector<Value> items;
  std::vector<Entry> table;
};

const char* type_name(Value::Type t) {
  switch (t) {
    case Value::Type::number:
      return "number";
    case Value::Type::string:
      return "string";
    case Value::Type::boolean:
      return "boolean";
    case Value::Type::array:
      return "array";
    case Value::Type::table:
      return "table";
  }
  return "value";
}

struct Section {
  std::string name;
  int line = 0, column = 0;
  std::vector<Entry> entries;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  void run(std::vector<Entry>& top, std::vector<Section>& sections, std::vector<Diagnostic>& diags) {
    diags_ = &diags;
    std::vector<Entry>* current = &top;
    while (!at_end()) {
      skip_blank();
      if (at_end()) break;
      const char c = peek();
      if (c == '\n') {
        advance();
        continue;
      }
      if (c == '#') {
        skip_comment();
        continue;
      }
      try {
        if (c == '[') {
          Section sec;
          sec.line = line_;
          sec.column = col_;
          advance();
          skip_blank();
          sec.name = identifier();
          skip_blank();
          expect(']');
          end_of_line();
          sections.push_back(std::move(sec));
          current = &sections.back().entries;
          continue;
        }
        current->push_back(entry());
        end_of_line();
      } catch (const Diagnostic& d) {
        diags.push_back(d);
        skip_line();
      }
    }
  }

 private:
  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_]; }
  void advance() {
    if (at_end()) return;
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw Diagnostic{line_, col_, msg}; }
  void skip_blank() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }
  void skip_comment() {
    while (!at_end() && peek() != '\n') advance();
  }
  void skip_line() {
    while (!at_end() && peek() != '\n') advance();
    advance();
  }
  // blanks, comments and newlines, inside arrays
  void skip_space() {
    for (;;) {
      skip_blank();
      if (peek() == '#') skip_comment();
      if (peek() == '\n') {
        advance();
        continue;
      }
      return;
    }
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'" + (at_end() || peek() == '\n' ? " before end of line" : ""));
    advance();
  }
  void end_of_line() {
    skip_blank();
    if (peek() == '#') skip_comment();
    if (!at_end() && peek() != '\n') fail("unexpected text after value");
    advance();
  }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }
  std::string identifier() {
    if (!ident_char(peek())) fail("expected a key name");
    std::string out;
    while (ident_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }
  Entry entry() {
    Entry e;
    e.line = line_;
    e.column = col_;
    e.key = identifier();
    skip_blank();
    expect('=');
    skip_blank();
    e.value = std::make_shared<Value>(value());
    return e;
  }
  Value value() {
    Value v;
    v.line = line_;
    v.column = col_;
    const char c = peek();
    if (c == '"') {
      v.type = Value::Type::string;
      advance();
      while (peek() != '"') {
        if (at_end() || peek() == '\n') fail("unterminated string");
        if (peek() == '\\') {
          advance();
          const char e = peek();
          if (e == 'n') v.text += '\n';
          else if (e == 't') v.text += '\t';
          else if (e == '"' || e == '\\') v.text += e;
          else fail("unknown escape sequence");
        } else {
          v.text += peek();
        }
        advance();
      }
      advance();
    } else if (c == '[') {
      v.type = Value::Type::array;
      advance();
      skip_space();
      while (peek() != ']') {
        v.items.push_back(value());
        skip_space();
        if (peek() == ',') {
          advance();
          skip_space();
        } else if (peek() != ']') {
          fail("expected ',' or ']' in array");
        }
      }
      advance();
    } else if (c == '{') {
      v.type = Value::Type::table;
      advance();
      skip_blank();
      while (peek() != '}') {
        v.table.push_back(entry());
        skip_blank();
        if (peek() == ',') {
          advance();
          skip_blank();
        } else if (peek() != '}') {
          fail("expected ',' or '}' in inline table");
        }
      }
      advance();
    } else if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
      v.type = Value::Type::number;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == '+' ||
                           peek() == '-' || peek() == '_'))
        v.text += s_[i_], advance();
      std::string t = v.text;
      if (!t.empty() && t[0] == '+') t.erase(0, 1);
      const auto res = std::from_chars(t.data(), t.data() + t.size(), v.number);
      if (res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v.number)) {
        line_ = v.line;
        col_ = v.column;
        fail("malformed number '" + v.text + "'");
      }
    } else if (ident_char(c)) {
      const std::string word = identifier();
      if (word == "true" || word == "false") {
        v.type = Value::Type::boolean;
        v.boolean = word == "true";
      } else {
        line_ = v.line;
        col_ = v.column;
        fail("expected a value, got '" + word + "' (strings need double quotes)");
      }
    } else {
      fail("expected a value");
    }
    return v;
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
  std::vector<Diagnostic>* diags_ = nullptr;
};

// ---- binding ----------------------------------------------------------

using Positions = std::map<std::string, std::pair<int, int>>;  // "section.key" -> line, column

struct Binder {
  std::vector<Diagnostic>& diags;
  Positions& pos;

  void error(const Value& v, const std::string& msg) { diags.push_back({v.line, v.column, msg}); }
  void error(const Entry& e, const std::string& msg) { diags.push_back({e.line, e.column, msg}); }

  bool number(const Entry& e, double& out) {
    if (e.value->type != Value::Type::number) {
      error(*e.value, "'" + e.key + "' expects a number, got a " + type_name(e.value->type));
      return false;
    }
    out = e.value->number;
    return true;
  }
  bool integer(const Entry& e, int& out) {
    double x;
    if (!number(e, x)) return false;
    if (std::floor(x) != x || std::abs(x) > 1e9) {
      error(*e.value, "'" + e.key + "' expects an integer");
      return false;
    }
    out = static_cast<int>(x);
    return true;
  }
  bool unsigned64(const Entry& e, std::uint64_t& out) {
    if (e.value->type != Value::Type::number) {
      error(*e.value, "'" + e.key + "' expects a non-negative integer");
      return false;
    }
    const std::string& t = e.value->text;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      error(*e.value, "'" + e.key + "' expects a non-negative integer");
      return false;
    }
    return true;
  }
  bool boolean(const Entry& e, bool& out) {
    if (e.value->type != Value::Type::boolean) {
      error(*e.value, "'" + e.key + "' expects true or false");
      return false;
    }
    out = e.value->boolean;
    return true;
  }
  bool string(const Entry& e, std::string& out) {
    if (e.value->type != Value::Type::string) {
      error(*e.value, "'" + e.key + "' expects a quoted string");
      return false;
    }
    out = e.value->text;
    return true;
  }
  bool numbers(const Value& v, const std::string& key, std::vector<double>& out) {
    if (v.type == Value::Type::number) {
      out = {v.number};
      return true;
    }
    if (v.type != Value::Type::array) {
      error(v, "'" + key + "' expects an array of numbers");
      return false;
    }
    out.clear();
    for (const Value& it : v.items) {
      if (it.type != Value::Type::number) {
        error(it, "'" + key + "' expects an array of numbers");
        return false;
      }
      out.push_back(it.number);
    }
    return true;
  }
  bool strings(const Entry& e, std::vector<std::string>& out) {
    const Value& v = *e.value;
    if (v.type == Value::Type::string) {
      out = {v.text};
      return true;
    }
    if (v.type != Value::Type::array) {
      error(v, "'" + e.key + "' expects an array of strings");
      return false;
    }
    out.clear();
    for (const Value& it : v.items) {
      if (it.type != Value::Type::string) {
        error(it, "'" + e.key + "' expects an array of strings");
        return false;
      }
      out.push_back(it.text);
    }
    return true;
  }
};

using Handler = std::function<void(Binder&, const Entry&, RunConfig&)>;

const std::map<std::string, std::map<std::string, Handler>>& schema() {
  static const std::map<std::string, std::map<std::string, Handler>> s = {
      {"",
       {
           {"task", [](Binder& b, const Entry& e, RunConfig& c) { b.string(e, c.task); }},
       }},
      {"domain",
       {
           {"kind", [](Binder& b, const Entry& e, RunConfig& c) { b.string(e, c.domain.kind); }},
           {"n", [](Binder& b, const Entry& e, RunConfig& c) { b.integer(e, c.domain.n); }},
           {"R", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.domain.R); }},
           {"center", [](Binder& b, const Entry& e, RunConfig& c) { b.numbers(*e.value, e.key, c.domain.center); }},
           {"r0", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.domain.r0); }},
           {"axes", [](Binder& b, const Entry& e, RunConfig& c) { b.numbers(*e.value, e.key, c.domain.axes); }},
           {"holes",
            [](Binder& b, const Entry& e, RunConfig& c) {
              if (e.value->type != Value::Type::array) {
                b.error(*e.value, "'holes' expects an array of [center..., radius] arrays");
                return;
              }
              c.domain.holes.clear();
              for (const Value& it : e.value->items) {
                std::vector<double> hole;
                if (!b.numbers(it, "holes", hole)) return;
                c.domain.holes.push_back(hole);
              }
            }},
           {"normal", [](Binder& b, const Entry& e, RunConfig& c) { b.numbers(*e.value, e.key, c.domain.normal); }},
           {"offset", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.domain.offset); }},
           {"smoothing", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.domain.smoothing); }},
           {"sin_half_angle", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.domain.sin_half_angle); }},
           {"start", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.domain.start); }},
       }},
      {"solver",
       {
           {"path", [](Binder& b, const Entry& e, RunConfig& c) { b.string(e, c.solver.path); }},
           {"h",
            [](Binder& b, const Entry& e, RunConfig& c) {
              double h;
              if (b.number(e, h)) c.solver.h = h;
            }},
           {"tol", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.solver.tol); }},
           {"M", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.solver.M); }},
           {"nodes", [](Binder& b, const Entry& e, RunConfig& c) { b.integer(e, c.solver.nodes); }},
           {"coarse_levels", [](Binder& b, const Entry& e, RunConfig& c) { b.integer(e, c.solver.coarse_levels); }},
       }},
      {"scan",
       {
           {"r0", [](Binder& b, const Entry& e, RunConfig& c) { b.numbers(*e.value, e.key, c.scan.r0); }},
           {"R", [](Binder& b, const Entry& e, RunConfig& c) { b.numbers(*e.value, e.key, c.scan.R); }},
           {"extend", [](Binder& b, const Entry& e, RunConfig& c) { b.boolean(e, c.scan.extend); }},
           {"r0_factor", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.scan.r0_factor); }},
           {"R_factor", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.scan.R_factor); }},
           {"max_rows", [](Binder& b, const Entry& e, RunConfig& c) { b.integer(e, c.scan.max_rows); }},
           {"after", [](Binder& b, const Entry& e, RunConfig& c) { b.integer(e, c.scan.after); }},
       }},
      {"cap",
       {
           {"i", [](Binder& b, const Entry& e, RunConfig& c) { b.integer(e, c.cap.i); }},
           {"tol", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.cap.tol); }},
       }},
      {"star",
       {
           {"members", [](Binder& b, const Entry& e, RunConfig& c) { b.integer(e, c.star.members); }},
           {"radius", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.star.radius); }},
           {"radius_growth", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.star.radius_growth); }},
           {"sin_half_angle", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.star.sin_half_angle); }},
           {"angle_ratio", [](Binder& b, const Entry& e, RunConfig& c) { b.number(e, c.star.angle_ratio); }},
           {"seed", [](Binder& b, const Entry& e, RunConfig& c) { b.unsigned64(e, c.star.seed); }},
       }},
      {"output",
       {
           {"formats", [](Binder& b, const Entry& e, RunConfig& c) { b.strings(e, c.output.formats); }},
           {"dir", [](Binder& b, const Entry& e, RunConfig& c) { b.string(e, c.output.dir); }},
           {"prefix", [](Binder& b, const Entry& e, RunConfig& c) { b.string(e, c.output.prefix); }},
           {"per_node", [](Binder& b, const Entry& e, RunConfig& c) { b.boolean(e, c.output.per_node); }},
           {"grid", [](Binder& b, const Entry& e, RunConfig& c) { b.boolean(e, c.output.grid); }},
       }},
  };
  return s;
}

// domain keys besides `kind` that each kind accepts
const std::map<std::string, std::set<std::string>>& domain_keys() {
  static const std::map<std::string, std::set<std::string>> k = {
      {"ball", {"n", "R", "center"}},
      {"annulus", {"n", "R", "r0"}},
      {"ellipsoid", {"n", "axes"}},
      {"ball_minus_balls", {"n", "R", "center", "holes"}},
      {"half_space_cap", {"n", "R", "center", "normal", "offset", "smoothing"}},
      {"ball_minus_cones", {"n", "R", "sin_half_angle", "start"}},
  };
  return k;
}

const std::set<std::string>& tasks() {
  static const std::set<std::string> t = {"solve",      "curvature", "verify-convex", "scan-annulus",
                                          "cap-check", "star-scan", "selftest"};
  return t;
}

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (std::tolower(a[i - 1]) == std::tolower(b[j - 1]) ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

void bind_section(Binder& b, const std::string& name, const std::vector<Entry>& entries, RunConfig& cfg) {
  const auto& keys = schema().at(name);
  std::set<std::string> seen;
  const std::set<std::string>* allowed = nullptr;
  if (name == "domain") {
    cfg.has_domain = true;
    for (const Entry& e : entries)
      if (e.key == "kind") {
        keys.at("kind")(b, e, cfg);
        const auto it = domain_keys().find(cfg.domain.kind);
        if (it == domain_keys().end()) {
          std::string list;
          for (const auto& [k, _] : domain_keys()) list += (list.empty() ? "" : ", ") + k;
          b.error(*e.value, "unknown domain kind '" + cfg.domain.kind + "' (expected one of " + list + ")");
        } else {
          allowed = &it->second;
        }
      }
  }
  for (const Entry& e : entries) {
    if (!seen.insert(e.key).second) {
      b.error(e, "duplicate key '" + e.key + "'" + (name.empty() ? "" : " in [" + name + "]"));
      continue;
    }
    const auto h = keys.find(e.key);
    if (h == keys.end()) {
      std::string msg = "unknown key '" + e.key + "'" + (name.empty() ? "" : " in [" + name + "]");
      if (const auto s = suggest_key(name, e.key)) msg += "; did you mean '" + *s + "'?";
      b.error(e, msg);
      continue;
    }
    b.pos[name + "." + e.key] = {e.line, e.column};
    if (name == "domain" && e.key == "kind") continue;
    if (allowed && !allowed->count(e.key)) {
      b.error(e, "key '" + e.key + "' does not apply to domain kind '" + cfg.domain.kind + "'");
      continue;
    }
    h->second(b, e, cfg);
  }
}

struct Problem {
  std::string field;  // "section.key" for the position lookup
  std::string message;
};

std::vector<Problem> check(const RunConfig& c) {
  std::vector<Problem> out;
  auto need = [&](bool ok, const std::string& field, const std::string& msg) {
    if (!ok) out.push_back({field, msg});
  };
  need(tasks().count(c.task) > 0, ".task", "unknown task '" + c.task + "'");
  const bool wants_domain = c.task == "solve" || c.task == "curvature" || c.task == "verify-convex";
  need(!wants_domain || c.has_domain, "", "task '" + c.task + "' needs a [domain] block");
  const std::string& given = c.solver.path;
  need(given == "auto" || given == "radial" || given == "grid" || given == "u_truncated", "solver.path",
       "solver path must be auto, radial, grid or u_truncated (got '" + given + "')");
  const std::string path = resolved_path(c);
  need(!c.solver.h || *c.solver.h > 0.0, "solver.h", "solver h must be positive");
  need(c.solver.tol > 0.0, "solver.tol", "solver tol must be positive");
  need(c.solver.M > 0.0, "solver.M", "solver M must be positive");
  need(c.solver.nodes >= 16, "solver.nodes", "solver nodes must be at least 16");
  need(c.solver.coarse_levels >= 0, "solver.coarse_levels", "solver coarse_levels must be non-negative");

  if (c.has_domain) {
    const DomainConfig& d = c.domain;
    need(d.n >= 3, "domain.n", "domain n must be at least 3");
    if (d.kind == "annulus")
      need(d.r0 > 0.0 && d.r0 < d.R, "domain.r0",
           "annulus requires 0 < r0 < R (r0 = " + fmt_short(d.r0) + ", R = " + fmt_short(d.R) + ")");
    if (d.kind == "ellipsoid") need(static_cast<int>(d.axes.size()) == d.n, "domain.axes", "ellipsoid needs n semi-axes");
    if (path == "radial")
      need(d.kind == "ball" || d.kind == "annulus", "solver.path", "the radial path needs a ball or annulus domain");
    if (path != "radial" && (c.task == "solve" || c.task == "curvature" || c.task == "verify-convex"))
      need(d.n <= 4, "domain.n", "grid solves need n <= 4");
    if (path == "u_truncated") need(c.task == "solve", "solver.path", "u_truncated is only available for solve");
    if (out.empty()) {
      try {
        make_domain(d);
      } catch (const Error& e) {
        out.push_back({"domain.kind", e.what()});
      }
    }
  }
  for (const char* t : {"verify-convex", "cap-check", "star-scan"})
    need(c.task != t || path == "grid", "solver.path", std::string(t) + " runs on the grid path");
  need(c.task != "scan-annulus" || path != "u_truncated", "solver.path", "scan-annulus runs on the radial or grid path");

  need(!c.scan.r0.empty() && !c.scan.R.empty(), "scan.r0", "scan needs at least one r0 and one R");
  for (double r : c.scan.r0) need(r > 0.0, "scan.r0", "scan r0 values must be positive");
  for (double R : c.scan.R)
    for (double r : c.scan.r0)
      need(r < R, "scan.R", "scan requires r0 < R for every pair (r0 = " + fmt_short(r) + ", R = " + fmt_short(R) + ")");
  need(c.scan.r0_factor > 0.0 && c.scan.r0_factor <= 1.0, "scan.r0_factor", "scan r0_factor must lie in (0, 1]");
  need(c.scan.R_factor >= 1.0, "scan.R_factor", "scan R_factor must be at least 1");
  need(c.scan.max_rows >= 1, "scan.max_rows", "scan max_rows must be at least 1");
  need(c.scan.after >= 0, "scan.after", "scan after must be non-negative");
  need(c.cap.i >= 1, "cap.i", "cap i must be at least 1");
  need(c.cap.tol > 0.0, "cap.tol", "cap tol must be positive");
  need(c.star.members >= 1, "star.members", "star members must be at least 1");
  need(c.star.radius > 1.0, "star.radius", "star radius must exceed 1 (cone tips sit at |x_4| = 1)");
  need(c.star.radius_growth >= 1.0, "star.radius_growth", "star radius_growth must be at least 1");
  need(c.star.sin_half_angle > 0.0 && c.star.sin_half_angle < 1.0, "star.sin_half_angle",
       "star sin_half_angle must lie in (0, 1)");
  need(c.star.angle_ratio > 0.0 && c.star.angle_ratio < 1.0, "star.angle_ratio", "star angle_ratio must lie in (0, 1)");
  for (const std::string& f : c.output.formats)
    need(f == "csv" || f == "json", "output.formats", "unknown output format '" + f + "' (csv or json)");
  need(!c.output.prefix.empty(), "output.prefix", "output prefix must not be empty");
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\', out += c;
    else if (c == '\n') out += "\\n";
    else if (c == '\t') out += "\\t";
    else out += c;
  }
  return out + "\"";
}

std::string list(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? ", " : "") + fmt_short(xs[k]);
  return out + "]";
}

}  // namespace

std::optional<std::string> suggest_key(const std::string& section, const std::string& key) {
  static const std::map<std::string, std::string> alias = {
      {"mesh_size", "h"},  {"mesh", "h"},        {"dx", "h"},       {"spacing", "h"},   {"radius", "R"},
      {"outer", "R"},      {"inner", "r0"},      {"dim", "n"},      {"dimension", "n"}, {"tolerance", "tol"},
      {"semi_axes", "axes"}, {"format", "formats"}, {"type", "kind"}, {"shape", "kind"},
  };
  const auto it = schema().find(section);
  if (it == schema().end()) return std::nullopt;
  if (const auto a = alias.find(key); a != alias.end() && it->second.count(a->second)) return a->second;
  std::optional<std::string> best;
  int best_d = 3;
  for (const auto& [k, _] : it->second) {
    const int d = edit_distance(key, k);
    if (d < best_d && d < static_cast<int>(std::max(k.size(), key.size()))) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

std::string resolved_path(const RunConfig& cfg) {
  if (cfg.solver.path != "auto") return cfg.solver.path;
  return cfg.task == "scan-annulus" ? "radial" : "grid";
}

bool domain_key_applies(const std::string& kind, const std::string& key) {
  const auto it = domain_keys().find(kind);
  return it != domain_keys().end() && it->second.count(key) > 0;
}

Domain make_domain(const DomainConfig& d) {
  auto point = [&](const std::vector<double>& xs, const char* what) {
    if (xs.empty()) return Vec(d.n);
    if (static_cast<int>(xs.size()) != d.n) throw PreconditionError(std::string(what) + " needs n coordinates");
    Vec v(d.n);
    for (int k = 0; k < d.n; ++k) v[k] = xs[k];
    return v;
  };
  if (d.kind == "ball") return Domain::ball(d.n, d.R, point(d.center, "center"));
  if (d.kind == "annulus") return Domain::annulus(d.n, d.r0, d.R);
  if (d.kind == "ellipsoid") {
    if (static_cast<int>(d.axes.size()) != d.n) throw PreconditionError("ellipsoid needs n semi-axes");
    return Domain::ellipsoid(d.axes);
  }
  if (d.kind == "ball_minus_balls") {
    std::vector<Ball> holes;
    for (const auto& hole : d.holes) {
      if (static_cast<int>(hole.size()) != d.n + 1) throw PreconditionError("each hole is [center..., radius]");
      holes.push_back(Ball{point(std::vector<double>(hole.begin(), hole.end() - 1), "hole center"), hole.back()});
    }
    return Domain::ball_minus_balls(Ball{point(d.center, "center"), d.R}, holes);
  }
  if (d.kind == "half_space_cap") {
    if (d.normal.empty()) throw PreconditionError("half_space_cap needs a normal");
    return Domain::half_space_cap(Ball{point(d.center, "center"), d.R}, point(d.normal, "normal"), d.offset,
                                  d.smoothing);
  }
  if (d.kind == "ball_minus_cones") return Domain::ball_minus_cones(d.n, d.R, d.sin_half_angle, d.start);
  throw PreconditionError("unknown domain kind '" + d.kind + "'");
}

ParseResult parse_config(const std::string& text) {
  ParseResult res;
  std::vector<Entry> top;
  std::vector<Section> sections;
  Parser(text).run(top, sections, res.diagnostics);

  // inline tables at the top level become sections
  std::vector<Entry> plain;
  for (Entry& e : top) {
    if (e.value->type == Value::Type::table) {
      Section s;
      s.name = e.key;
      s.line = e.line;
      s.column = e.column;
      s.entries = e.value->table;
      sections.push_back(std::move(s));
    } else {
      plain.push_back(e);
    }
  }
  RunConfig cfg;
  Positions pos;
  Binder b{res.diagnostics, pos};
  bind_section(b, "", plain, cfg);
  std::set<std::string> seen;
  for (const Section& s : sections) {
    if (!schema().count(s.name) || s.name.empty()) {
      std::string msg = "unknown section '" + s.name + "'";
      std::optional<std::string> best;
      int best_d = 3;
      for (const auto& [k, _] : schema())
        if (!k.empty() && edit_distance(s.name, k) < best_d) best_d = edit_distance(s.name, k), best = k;
      if (best) msg += "; did you mean '" + *best + "'?";
      res.diagnostics.push_back({s.line, s.column, msg});
      continue;
    }
    if (!seen.insert(s.name).second) {
      res.diagnostics.push_back({s.line, s.column, "duplicate section '" + s.name + "'"});
      continue;
    }
    bind_section(b, s.name, s.entries, cfg);
  }
  if (!res.diagnostics.empty()) return res;
  for (const Problem& p : check(cfg)) {
    Diagnostic d{0, 0, p.message};
    if (const auto it = pos.find(p.field); it != pos.end()) {
      d.line = it->second.first;
      d.column = it->second.second;
    }
    res.diagnostics.push_back(d);
  }
  if (res.diagnostics.empty()) res.config = cfg;
  return res;
}

std::vector<Diagnostic> validate(const RunConfig& cfg) {
  std::vector<Diagnostic> out;
  for (const Problem& p : check(cfg)) out.push_back({0, 0, p.message});
  return out;
}

std::string serialize(const RunConfig& c) {
  std::ostringstream os;
  os << "task = " << quote(c.task) << "\n";
  if (c.has_domain) {
    const DomainConfig& d = c.domain;
    const auto& keys = domain_keys().at(d.kind);
    os << "\n[domain]\nkind = " << quote(d.kind) << "\n";
    if (keys.count("n")) os << "n = " << d.n << "\n";
    if (keys.count("R")) os << "R = " << fmt_short(d.R) << "\n";
    if (keys.count("center") && !d.center.empty()) os << "center = " << list(d.center) << "\n";
    if (keys.count("r0")) os << "r0 = " << fmt_short(d.r0) << "\n";
    if (keys.count("axes")) os << "axes = " << list(d.axes) << "\n";
    if (keys.count("holes")) {
      os << "holes = [";
      for (std::size_t k = 0; k < d.holes.size(); ++k) os << (k ? ", " : "") << list(d.holes[k]);
      os << "]\n";
    }
    if (keys.count("normal")) os << "normal = " << list(d.normal) << "\n";
    if (keys.count("offset")) os << "offset = " << fmt_short(d.offset) << "\n";
    if (keys.count("smoothing")) os << "smoothing = " << fmt_short(d.smoothing) << "\n";
    if (keys.count("sin_half_angle")) os << "sin_half_angle = " << fmt_short(d.sin_half_angle) << "\n";
    if (keys.count("start")) os << "start = " << fmt_short(d.start) << "\n";
  }
  os << "\n[solver]\npath = " << quote(c.solver.path) << "\n";
  if (c.solver.h) os << "h = " << fmt_short(*c.solver.h) << "\n";
  os << "tol = " << fmt_short(c.solver.tol) << "\nM = " << fmt_short(c.solver.M) << "\nnodes = " << c.solver.nodes
     << "\ncoarse_levels = " << c.solver.coarse_levels << "\n";
  os << "\n[scan]\nr0 = " << list(c.scan.r0) << "\nR = " << list(c.scan.R) << "\nextend = " << (c.scan.extend ? "true" : "false")
     << "\nr0_factor = " << fmt_short(c.scan.r0_factor) << "\nR_factor = " << fmt_short(c.scan.R_factor)
     << "\nmax_rows = " << c.scan.max_rows << "\nafter = " << c.scan.after << "\n";
  os << "\n[cap]\ni = " << c.cap.i << "\ntol = " << fmt_short(c.cap.tol) << "\n";
  os << "\n[star]\nmembers = " << c.star.members << "\nradius = " << fmt_short(c.star.radius)
     << "\nradius_growth = " << fmt_short(c.star.radius_growth) << "\nsin_half_angle = " << fmt_short(c.star.sin_half_angle)
     << "\nangle_ratio = " << fmt_short(c.star.angle_ratio) << "\nseed = " << c.star.seed << "\n";
  os << "\n[output]\nformats = [";
  for (std::size_t k = 0; k < c.output.formats.size(); ++k) os << (k ? ", " : "") << quote(c.output.formats[k]);
  os << "]\ndir = " << quote(c.output.dir) << "\nprefix = " << quote(c.output.prefix)
     << "\nper_node = " << (c.output.per_node ? "true" : "false") << "\ngrid = " << (c.output.grid ? "true" : "false")
     << "\n";
  return os.str();
}

}  // namespace ylab
