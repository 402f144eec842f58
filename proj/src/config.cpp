#include "fadmm/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fadmm {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double to_double(const std::string& v, long line) {
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ParseError("line " + std::to_string(line) + ": expected a number, got '" + v + "'",
                     line);
  }
  return out;
}

long to_long(const std::string& v, long line) {
  long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + v + "'",
                     line);
  }
  return out;
}

std::uint64_t to_u64(const std::string& v, long line) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ParseError("line " + std::to_string(line) + ": expected a nonnegative integer, got '" +
                     v + "'", line);
  }
  return out;
}

bool to_bool(const std::string& v, long line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError("line " + std::to_string(line) + ": expected true/false, got '" + v + "'",
                   line);
}

}  // namespace

RunSpec parse_config(const std::string& text) {
  RunSpec spec;
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                       stripped + "'", line_no);
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty key or value", line_no);
    }

    if (key == "app") {
      spec.app = value;
    } else if (key == "dataset") {
      spec.dataset = value;
    } else if (key == "variants") {
      spec.variants.clear();
      std::istringstream vs(value);
      std::string item;
      while (std::getline(vs, item, ',')) {
        const std::string name = trim(item);
        if (name.empty()) continue;
        try {
          spec.variants.push_back(variant_from_name(name));
        } catch (const ParamError& e) {
          throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
        }
      }
    } else if (key == "iterations") {
      spec.iterations = to_long(value, line_no);
    } else if (key == "seconds") {
      spec.seconds = to_double(value, line_no);
    } else if (key == "seed") {
      spec.seed = to_u64(value, line_no);
    } else if (key == "output_dir") {
      spec.output_dir = value;
    } else if (key == "xi") {
      spec.xi = to_double(value, line_no);
    } else if (key == "theta") {
      spec.theta = to_double(value, line_no);
    } else if (key == "p") {
      spec.p = to_double(value, line_no);
    } else if (key == "chi") {
      spec.chi = to_double(value, line_no);
    } else if (key == "beta0") {
      spec.beta0 = to_double(value, line_no);
    } else if (key == "record_diagnostics") {
      spec.record_diagnostics = to_bool(value, line_no);
    } else if (key == "timing") {
      if (value == "wall") {
        spec.wall_timing = true;
      } else if (value == "none") {
        spec.wall_timing = false;
      } else {
        throw ParseError("line " + std::to_string(line_no) + ": timing must be wall or none",
                         line_no);
      }
    } else if (key == "rho") {
      spec.rho = to_double(value, line_no);
    } else if (key == "r") {
      spec.r = static_cast<std::size_t>(to_long(value, line_no));
    } else if (key == "p_count") {
      spec.p_count = static_cast<std::size_t>(to_long(value, line_no));
    } else if (key == "rho0") {
      spec.rho0 = to_double(value, line_no);
    } else if (key == "rho1") {
      spec.rho1 = to_double(value, line_no);
    } else if (key == "rho2") {
      spec.rho2 = to_double(value, line_no);
    } else if (key == "k") {
      spec.k = static_cast<std::size_t>(to_long(value, line_no));
    } else if (key == "label_pair") {
      const std::size_t comma = value.find(',');
      if (comma == std::string::npos) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": label_pair needs 'pos,neg'", line_no);
      }
      spec.has_label_pair = true;
      spec.label_pos = to_double(trim(value.substr(0, comma)), line_no);
      spec.label_neg = to_double(trim(value.substr(comma + 1)), line_no);
    } else if (key == "subset_rows") {
      spec.subset_rows = static_cast<std::size_t>(to_long(value, line_no));
    } else if (key == "subset_cols") {
      spec.subset_cols = static_cast<std::size_t>(to_long(value, line_no));
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'",
                       line_no);
    }
  }
  return spec;
}

RunSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void RunSpec::validate() const {
  if (app != "fda" && app != "srm" && app != "recovery") {
    throw ParamError("config: app must be fda, srm or recovery, got '" + app + "'");
  }
  if (dataset.empty()) throw ParamError("config: dataset is required");
  if (iterations < 0) {
    throw ParamError("config: iterations must be nonnegative, got " +
                     std::to_string(iterations));
  }
  if (seconds < 0.0) {
    throw ParamError("config: seconds must be nonnegative, got " + std::to_string(seconds));
  }
  if (variants_effective().empty()) throw ParamError("config: need at least one variant");

  SolverConfig probe;
  probe.xi = xi;
  probe.theta = theta;
  probe.p = p;
  probe.chi = chi;
  probe.beta0 = beta0_effective();
  probe.iterations = iterations;
  probe.seconds = seconds;
  probe.validate();

  if (app == "fda" && r == 0) throw ParamError("config: fda needs r >= 1");
  if (app == "srm" && p_count == 0) throw ParamError("config: srm needs p_count >= 1");
}

double RunSpec::beta0_effective() const {
  if (beta0 > 0.0) return beta0;
  if (app == "fda") return 100.0 * rho;
  return 0.01;  // srm and recovery defaults
}

std::vector<Variant> RunSpec::variants_effective() const {
  if (!variants.empty()) return variants;
  if (app == "recovery") {
    // No weak-convexity certificate for sqrt(top-k), so no Q-variants here.
    return {Variant::fadmm_d, Variant::spgm_d, Variant::spm};
  }
  return {Variant::fadmm_d, Variant::fadmm_q, Variant::spgm_d, Variant::spgm_q, Variant::spm};
}

std::string serialize_config(const RunSpec& spec) {
  std::ostringstream out;
  char buf[64];
  auto num = [&buf](double v) {
    if (std::isinf(v)) return std::string(v > 0 ? "inf" : "-inf");
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
  };
  out << "app = " << spec.app << '\n';
  out << "dataset = " << spec.dataset << '\n';
  if (!spec.variants.empty()) {
    out << "variants = ";
    for (std::size_t i = 0; i < spec.variants.size(); ++i) {
      if (i) out << ", ";
      out << variant_name(spec.variants[i]);
    }
    out << '\n';
  }
  out << "iterations = " << spec.iterations << '\n';
  if (spec.seconds > 0.0) out << "seconds = " << num(spec.seconds) << '\n';
  out << "seed = " << spec.seed << '\n';
  out << "output_dir = " << spec.output_dir << '\n';
  out << "xi = " << num(spec.xi) << '\n';
  out << "theta = " << num(spec.theta) << '\n';
  out << "p = " << num(spec.p) << '\n';
  if (spec.chi > 0.0) out << "chi = " << num(spec.chi) << '\n';
  if (spec.beta0 > 0.0) out << "beta0 = " << num(spec.beta0) << '\n';
  out << "record_diagnostics = " << (spec.record_diagnostics ? "true" : "false") << '\n';
  out << "timing = " << (spec.wall_timing ? "wall" : "none") << '\n';
  if (spec.app == "fda") {
    out << "rho = " << num(spec.rho) << '\n';
    out << "r = " << spec.r << '\n';
  } else if (spec.app == "srm") {
    out << "p_count = " << spec.p_count << '\n';
  } else if (spec.app == "recovery") {
    out << "rho0 = " << num(spec.rho0) << '\n';
    out << "rho1 = " << num(spec.rho1) << '\n';
    out << "rho2 = " << num(spec.rho2) << '\n';
    if (spec.k > 0) out << "k = " << spec.k << '\n';
  }
  if (spec.has_label_pair) {
    out << "label_pair = " << num(spec.label_pos) << ", " << num(spec.label_neg) << '\n';
  }
  if (spec.subset_rows > 0) out << "subset_rows = " << spec.subset_rows << '\n';
  if (spec.subset_cols > 0) out << "subset_cols = " << spec.subset_cols << '\n';
  return out.str();
}

}  // namespace fadmm
