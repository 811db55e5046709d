#include "fracvar/config.hpp"

#include <charconv>
#include <map>

namespace fracvar {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_vector(std::string_view field, std::vector<double>& out) {
  out.clear();
  while (true) {
    const size_t comma = field.find(',');
    const std::string_view piece = trim(field.substr(0, comma));
    double value = 0.0;
    if (!parse_number(piece, value)) return false;
    out.push_back(value);
    if (comma == std::string_view::npos) return true;
    field.remove_prefix(comma + 1);
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::solve_and_conserve: return "solve_and_conserve";
    case ExperimentKind::transfer_check: return "transfer_check";
    case ExperimentKind::matrix_dump: return "matrix_dump";
  }
  return "?";
}

ParseOutcome parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::vector<ConfigIssue> issues;
  std::map<std::string, int, std::less<>> seen;  // key -> first line

  const auto bad_value = [&issues](int line, std::string_view key, std::string_view value) {
    issues.push_back(
        {line, "bad value '" + std::string(value) + "' for key '" + std::string(key) + "'"});
  };

  int lineno = 0;
  while (!text.empty() || lineno == 0) {
    const size_t newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);
    ++lineno;

    if (const size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back({lineno, "expected key = value"});
      continue;
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) {
      issues.push_back({lineno, "missing key before '='"});
      continue;
    }
    if (const auto [it, fresh] = seen.emplace(key, lineno); !fresh) {
      issues.push_back({lineno, "duplicate key '" + key + "' (first set on line " +
                                    std::to_string(it->second) + ")"});
      continue;
    }

    if (key == "kind") {
      if (value == "solve_and_conserve") cfg.kind = ExperimentKind::solve_and_conserve;
      else if (value == "transfer_check") cfg.kind = ExperimentKind::transfer_check;
      else if (value == "matrix_dump") cfg.kind = ExperimentKind::matrix_dump;
      else bad_value(lineno, key, value);
    } else if (key == "a") {
      if (!parse_number(value, cfg.a)) bad_value(lineno, key, value);
    } else if (key == "b") {
      if (!parse_number(value, cfg.b)) bad_value(lineno, key, value);
    } else if (key == "N") {
      if (!parse_number(value, cfg.n_steps)) bad_value(lineno, key, value);
    } else if (key == "alpha") {
      if (!parse_number(value, cfg.alpha)) bad_value(lineno, key, value);
    } else if (key == "d") {
      if (!parse_number(value, cfg.dim)) bad_value(lineno, key, value);
    } else if (key == "lagrangian") {
      cfg.lagrangian = value;
    } else if (key == "symmetry") {
      if (value.starts_with("translation(") && value.ends_with(")")) {
        cfg.symmetry = "translation";
        if (!parse_vector(value.substr(12, value.size() - 13), cfg.symmetry_direction))
          bad_value(lineno, key, value);
      } else if (value == "translation") {
        issues.push_back({lineno, "translation needs a direction, e.g. translation(1,0)"});
      } else {
        cfg.symmetry = value;
      }
    } else if (key == "Q0") {
      if (!parse_vector(value, cfg.q0)) bad_value(lineno, key, value);
    } else if (key == "QN") {
      if (!parse_vector(value, cfg.qn)) bad_value(lineno, key, value);
    } else if (key == "max_iters") {
      if (!parse_number(value, cfg.solver.max_iters)) bad_value(lineno, key, value);
    } else if (key == "residual_tol") {
      if (!parse_number(value, cfg.solver.residual_tol)) bad_value(lineno, key, value);
    } else if (key == "linesearch") {
      if (value == "true") cfg.solver.linesearch = true;
      else if (value == "false") cfg.solver.linesearch = false;
      else bad_value(lineno, key, value);
    } else if (key == "jacobian") {
      if (value == "finite_difference") cfg.solver.jacobian = JacobianMode::finite_difference;
      else if (value == "user")
        issues.push_back({lineno, "jacobian = user is not available from config files"});
      else bad_value(lineno, key, value);
    } else if (key == "constancy_tol") {
      if (!parse_number(value, cfg.constancy_tol)) bad_value(lineno, key, value);
    } else if (key == "r") {
      if (!parse_number(value, cfg.shift_order)) bad_value(lineno, key, value);
    } else if (key == "pair") {
      cfg.pair_name = value;
    } else if (key == "truncation") {
      if (!parse_number(value, cfg.truncation)) bad_value(lineno, key, value);
    } else if (key == "p_max") {
      if (!parse_number(value, cfg.p_max)) bad_value(lineno, key, value);
    } else if (key == "t_points") {
      if (!parse_number(value, cfg.t_points)) bad_value(lineno, key, value);
    } else if (key == "quad_panels") {
      if (!parse_number(value, cfg.quad_panels)) bad_value(lineno, key, value);
    } else if (key == "transfer_tol") {
      if (!parse_number(value, cfg.transfer_tol)) bad_value(lineno, key, value);
    } else if (key == "output_path") {
      cfg.output_path = value;
    } else {
      issues.push_back({lineno, "unknown key '" + key + "'"});
    }
  }

  // Constraint pass: report every violation, citing the offending line when
  // the key was given explicitly.
  const auto line_of = [&seen](const char* key) {
    const auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second;
  };
  const auto violate = [&](const char* key, std::string message) {
    issues.push_back({line_of(key), std::move(message)});
  };

  if (!(cfg.a < cfg.b)) violate("b", "a < b required");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) violate("alpha", "alpha outside (0, 1]");
  if (cfg.dim < 1) violate("d", "d >= 1 required");
  if (cfg.solver.max_iters < 0) violate("max_iters", "max_iters >= 0 required");
  if (!(cfg.solver.residual_tol > 0.0)) violate("residual_tol", "residual_tol > 0 required");
  if (!(cfg.constancy_tol > 0.0)) violate("constancy_tol", "constancy_tol > 0 required");

  if (cfg.kind != ExperimentKind::transfer_check) {
    if (!seen.contains("N")) issues.push_back({0, "N required for " + to_string(cfg.kind)});
    else if (cfg.n_steps < 2) violate("N", "N >= 2 required");
  }

  if (cfg.kind == ExperimentKind::solve_and_conserve) {
    for (const char* key : {"Q0", "QN"}) {
      const std::vector<double>& endpoint = key[1] == '0' ? cfg.q0 : cfg.qn;
      if (!seen.contains(key))
        issues.push_back({0, std::string(key) + " required for solve_and_conserve"});
      else if (static_cast<int>(endpoint.size()) != cfg.dim)
        violate(key, std::string(key) + " must have d components");
    }
    if (cfg.symmetry == "rotation2d" && cfg.dim != 2) violate("symmetry", "rotation2d needs d = 2");
    if (cfg.symmetry == "translation" &&
        static_cast<int>(cfg.symmetry_direction.size()) != cfg.dim)
      violate("symmetry", "translation direction must have d components");
  }

  if (cfg.kind == ExperimentKind::matrix_dump) {
    if (cfg.shift_order < 1) violate("r", "r >= 1 required");
    else if (cfg.n_steps >= 2 && cfg.shift_order > cfg.n_steps - 1)
      violate("r", "r <= N - 1 required");
  }

  if (cfg.kind == ExperimentKind::transfer_check) {
    if (cfg.truncation < 0) violate("truncation", "truncation >= 0 required");
    if (cfg.p_max < 1) violate("p_max", "p_max >= 1 required");
    if (cfg.t_points < 1) violate("t_points", "t_points >= 1 required");
    if (cfg.quad_panels < 1) violate("quad_panels", "quad_panels >= 1 required");
    if (!(cfg.transfer_tol > 0.0)) violate("transfer_tol", "transfer_tol > 0 required");
  }

  ParseOutcome outcome;
  outcome.issues = std::move(issues);
  if (outcome.issues.empty()) outcome.config = std::move(cfg);
  return outcome;
}

}  // namespace fracvar
