#include "smalp/tuner.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "cursor.hpp"
#include "smalp/error.hpp"

namespace smalp {

std::vector<TestCase> parse_cases(std::string_view text) {
  detail::Cursor in(text);
  std::vector<TestCase> out;
  while (!in.at_end()) {
    TestCase tc{detail::read_expr(in), 0.0, std::nullopt};
    in.expect("->");
    tc.expected_value = in.number();
    if (in.consume(";")) {
      in.expect("{");
      Substitution s;
      if (!in.consume("}")) {
        do {
          in.skip_space();
          std::string var = in.identifier();
          in.expect("/");
          s.bind(std::move(var), detail::read_term(in));
        } while (in.consume(","));
        in.expect("}");
      }
      tc.expected_subst = std::move(s);
    }
    in.expect(".");
    out.push_back(std::move(tc));
  }
  return out;
}

double round_decimal(double x, int digits) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::fabs(x), std::chars_format::fixed);
  std::string s(buf, end);
  auto dot = s.find('.');
  if (dot == std::string::npos || s.size() - dot - 1 <= static_cast<std::size_t>(digits)) return x;

  bool up = s[dot + 1 + digits] >= '5';
  s.erase(dot + 1 + digits);
  if (digits == 0) s.erase(dot);
  if (up) {
    std::size_t i = s.size();
    while (true) {
      if (i == 0) {
        s.insert(s.begin(), '1');
        break;
      }
      --i;
      if (s[i] == '.') continue;
      if (s[i] == '9') {
        s[i] = '0';
        continue;
      }
      ++s[i];
      break;
    }
  }
  double r = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), r);
  return std::signbit(x) ? -r : r;
}

RoundedResult rounded(const CandidateResult& c, const std::vector<TestCase>& cases, int digits) {
  RoundedResult r;
  double sum = 0.0;
  for (std::size_t i = 0; i < c.per_case.size(); ++i) {
    double v = round_decimal(c.per_case[i].value, digits);
    double d = round_decimal(std::fabs(v - cases[i].expected_value), digits);
    r.values.push_back(v);
    r.deviations.push_back(d);
    sum += d;
  }
  r.z = round_decimal(sum, digits);
  return r;
}

CandidateResult evaluate_candidate(const SymbolicSubstitution& theta, const std::vector<Answer>& sfcas,
                                   const std::vector<TestCase>& cases, const Registry& reg) {
  CandidateResult out{theta, {}, 0.0};
  out.per_case.reserve(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    Answer inst{apply_theta(theta, sfcas[i].expr), sfcas[i].subst, AnswerKind::SACA};
    Answer fin = interpret(reg, inst).answer;
    auto v = fin.value();
    if (!v) {
      throw NonGroundResult("case " + std::to_string(i + 1) + " does not reduce to a truth degree under {" +
                            theta.render() + "}: " + render(fin.expr, {true}));
    }
    double d = std::fabs(*v - cases[i].expected_value);
    out.per_case.push_back(CaseResult{*v, d});
    out.z += d;
  }
  return out;
}

namespace {

std::vector<CandidateResult> sweep(const Enumeration& cands, const std::vector<Answer>& sfcas,
                                   const std::vector<TestCase>& cases, const Registry& reg, unsigned jobs) {
  std::vector<CandidateResult> out(cands.size());
  if (jobs <= 1 || cands.size() < 2) {
    for (std::size_t j = 0; j < cands.size(); ++j) out[j] = evaluate_candidate(cands[j], sfcas, cases, reg);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t j = next++; j < cands.size(); j = next++) {
        try {
          out[j] = evaluate_candidate(cands[j], sfcas, cases, reg);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

TuningReport tune(const Program& prog, const std::vector<TestCase>& cases, const DomainSpec& spec,
                  const Registry& reg, const TuneOptions& opts) {
  if (cases.empty()) throw Error("tuning needs at least one test case");
  for (const auto& sym : sym_of(prog)) {
    bool covered = false;
    for (const auto& [s, values] : spec.domains) covered = covered || s.name == sym.name;
    if (!covered) throw IncompleteDomain("no domain for symbol '" + sym.name + "'");
  }

  TuningReport report;
  report.objective_digits = opts.objective_digits;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    Answer sfca = solve(prog, reg, cases[i].goal, opts.engine).answer;
    if (cases[i].expected_subst && !equivalent_up_to_renaming(*cases[i].expected_subst, sfca.subst)) {
      throw TestCaseSubstMismatch("case " + std::to_string(i + 1) + ": expected " +
                                  render(*cases[i].expected_subst) + ", computed " + render(sfca.subst));
    }
    report.sfcas.push_back(std::move(sfca));
  }

  Enumeration cands(spec);
  report.candidates = sweep(cands, report.sfcas, cases, reg, opts.jobs);

  auto key = [&](std::size_t j) {
    const auto& c = report.candidates[j];
    double primary = opts.objective_digits ? rounded(c, cases, *opts.objective_digits).z : c.z;
    return std::tuple{primary, c.z, j};
  };
  for (std::size_t j = 1; j < report.candidates.size(); ++j) {
    if (key(j) < key(report.best)) report.best = j;
  }
  return report;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string pad(std::string s, std::size_t width) {
  // Θ is two bytes but one column wide.
  std::size_t cols = 0;
  for (unsigned char c : s) cols += (c & 0xC0) != 0x80;
  if (cols < width) s.append(width - cols, ' ');
  return s;
}

}  // namespace

std::string render_best(const TuningReport& report, const std::vector<TestCase>& cases, int digits) {
  const auto& best = report.best_candidate();
  return "Θ" + std::to_string(report.best + 1) + ": " + best.theta.render() +
         " (z=" + fixed(rounded(best, cases, digits).z, digits) + ")";
}

std::string render_table(const TuningReport& report, const std::vector<TestCase>& cases, int digits) {
  std::size_t col = static_cast<std::size_t>(digits) + 4;
  std::vector<std::string> symbol_names;
  if (!report.candidates.empty()) {
    for (const auto& [name, a] : report.candidates.front().theta.entries()) symbol_names.push_back(name);
  }
  std::vector<std::size_t> sym_width;
  for (const auto& n : symbol_names) {
    std::size_t w = n.size();
    for (const auto& c : report.candidates) w = std::max(w, c.theta.find(n)->render().size());
    sym_width.push_back(w + 2);
  }

  std::ostringstream os;
  std::string header = pad("Θ", 5);
  for (std::size_t k = 0; k < symbol_names.size(); ++k) header += pad(symbol_names[k], sym_width[k]);
  for (const auto& c : cases) {
    std::string g = render(c.goal, {true});
    header += "| " + pad(g, std::max(g.size(), 2 * col) + 1);
  }
  header += "| z";
  os << header << "\n";

  for (std::size_t j = 0; j < report.candidates.size(); ++j) {
    const auto& c = report.candidates[j];
    RoundedResult r = rounded(c, cases, digits);
    std::string row = pad("Θ" + std::to_string(j + 1), 5);
    for (std::size_t k = 0; k < symbol_names.size(); ++k) {
      row += pad(c.theta.find(symbol_names[k])->render(), sym_width[k]);
    }
    for (std::size_t i = 0; i < cases.size(); ++i) {
      std::string g = render(cases[i].goal, {true});
      std::string cell = pad(fixed(r.values[i], digits), col) + fixed(r.deviations[i], digits);
      row += "| " + pad(cell, std::max(g.size(), 2 * col) + 1);
    }
    row += "| " + fixed(r.z, digits);
    if (j == report.best) row += "  *";
    os << row << "\n";
  }
  os << "best " << render_best(report, cases, digits) << "\n";
  return os.str();
}

namespace {

nlohmann::ordered_json theta_json(const SymbolicSubstitution& th) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [name, a] : th.entries()) {
    if (a.sort == Sort::Weight) {
      out[name] = a.value;
    } else {
      out[name] = a.label;
    }
  }
  return out;
}

}  // namespace

std::string report_json(const TuningReport& report, const std::vector<TestCase>& cases, int digits) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["objective"] = report.objective_digits ? json("rounded-" + std::to_string(*report.objective_digits))
                                             : json("exact");
  doc["report_digits"] = digits;

  json cs = json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    json c;
    c["goal"] = render(cases[i].goal);
    c["expected"] = cases[i].expected_value;
    c["sfca"] = render(report.sfcas[i].expr);
    c["substitution"] = render(report.sfcas[i].subst);
    cs.push_back(std::move(c));
  }
  doc["cases"] = std::move(cs);

  json cands = json::array();
  for (std::size_t j = 0; j < report.candidates.size(); ++j) {
    const auto& c = report.candidates[j];
    RoundedResult r = rounded(c, cases, digits);
    json row;
    row["index"] = j + 1;
    row["theta"] = theta_json(c.theta);
    json values = json::array();
    json devs = json::array();
    for (const auto& pc : c.per_case) {
      values.push_back(pc.value);
      devs.push_back(pc.deviation);
    }
    row["values"] = std::move(values);
    row["deviations"] = std::move(devs);
    row["z"] = c.z;
    row["rounded"] = json{{"values", r.values}, {"deviations", r.deviations}, {"z", r.z}};
    cands.push_back(std::move(row));
  }
  doc["candidates"] = std::move(cands);

  const auto& best = report.best_candidate();
  doc["best"] = json{{"index", report.best + 1},
                     {"theta", theta_json(best.theta)},
                     {"z", best.z},
                     {"rounded_z", rounded(best, cases, digits).z}};
  return doc.dump(2) + "\n";
}

}  // namespace smalp
