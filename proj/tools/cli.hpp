// Copyright 2023 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage/config/parse/input error, 3 resource limit.

#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "potts_hodge/harness.hpp"

namespace potts_hodge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

struct Options {
  std::string matroid;
  std::string source = "default";
  std::string spec;
  std::optional<int> k;
  std::string q = "1";
  std::string w;
  std::string c;
  std::string alpha;
  std::string mode = "exact";
  std::string theorem = "all";
  std::optional<int> trials;
  std::uint64_t seed = 1;
  std::string q_grid;
  std::string out;
  std::string replay;
  bool json = false;
  bool timing = false;
  int workers = 0;
};

// Doubles accept decimal notation; rationals are converted.
inline double ParseDouble(const std::string& s) {
  if (s.find_first_of(".eE") == std::string::npos) {
    return ParseRational(s).get_d();
  }
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') {
    throw Error(ErrorKind::kInvalidParameters, "expected a number, got '" + s + "'");
  }
  return v;
}

template <Scalar T>
T ParseValue(const std::string& s) {
  if constexpr (kIsExact<T>) {
    return ParseRational(s);
  } else {
    return ParseDouble(s);
  }
}

template <Scalar T>
std::vector<T> ParseList(const std::string& text) {
  std::vector<T> out;
  std::size_t start = 0;
  if (text.empty()) return out;
  while (true) {
    std::size_t comma = text.find(',', start);
    out.push_back(ParseValue<T>(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string FormatDouble(double v) {
  std::ostringstream s;
  s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return s.str();
}

// Evaluation inputs shared by eval, hessian and spectrum. Missing w or c
// default to all ones; missing alpha is zero.
template <Scalar T>
struct PointInputs {
  T q;
  std::vector<T> w;
  CoeffSeq<T> c;
  MultiIndex alpha;
};

template <Scalar T>
PointInputs<T> ReadPoint(const Options& o, const Matroid& m, int w_len) {
  const int n = m.size();
  T q = ParseValue<T>(o.q);
  if (Sign(q) <= 0) {
    throw Error(ErrorKind::kInvalidParameters, "q must be > 0");
  }
  std::vector<T> w = o.w.empty() ? std::vector<T>(w_len, FromInt<T>(1))
                                 : ParseList<T>(o.w);
  if (static_cast<int>(w.size()) != w_len) {
    throw Error(ErrorKind::kInvalidParameters,
                "--w needs " + std::to_string(w_len) + " values, got " +
                    std::to_string(w.size()));
  }
  CoeffSeq<T> c = o.c.empty() ? CoeffSeq<T>::Ones(n) : CoeffSeq<T>(ParseList<T>(o.c));
  MultiIndex alpha = MultiIndex::Zero(n);
  if (!o.alpha.empty()) {
    alpha.orders.clear();
    for (const Rational& a : ParseRationalList(o.alpha)) {
      if (a.get_den() != 1 || a < 0) {
        throw Error(ErrorKind::kInvalidParameters,
                    "--alpha entries must be nonnegative integers");
      }
      alpha.orders.push_back(static_cast<int>(a.get_num().get_si()));
    }
  }
  return {q, std::move(w), std::move(c), std::move(alpha)};
}

template <Scalar T>
nlohmann::json ValueJson(const T& v) {
  if constexpr (kIsExact<T>) {
    return {{"value", FormatRational(v)}, {"float", v.get_d()}};
  } else {
    return {{"float", v}};
  }
}

template <Scalar T>
void PrintValue(const T& v, const Options& o, std::ostream& out) {
  if (o.json) {
    out << ValueJson(v).dump() << "\n";
  } else if constexpr (kIsExact<T>) {
    out << FormatRational(v) << "\n" << "float: " << FormatDouble(v.get_d()) << "\n";
  } else {
    out << FormatDouble(v) << "\n";
  }
}

template <Scalar T>
int Eval(const Options& o, const Matroid& m, std::ostream& out) {
  if (o.k) {
    if (!o.c.empty() || !o.alpha.empty()) {
      throw Error(ErrorKind::kInvalidParameters,
                  "--k cannot be combined with --c or --alpha");
    }
    PointInputs<T> p = ReadPoint<T>(o, m, m.size());
    PrintValue(ZkEval(m, *o.k, p.q, p.w), o, out);
    return kExitOk;
  }
  PointInputs<T> p = ReadPoint<T>(o, m, m.size() + 1);
  PrintValue(PartialEval(m, p.c, p.q, p.alpha, p.w), o, out);
  return kExitOk;
}

template <Scalar T>
nlohmann::json MatrixRowsJson(const SymMatrix<T>& h) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < h.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < h.dim(); ++j) {
      if constexpr (kIsExact<T>) {
        row.push_back(FormatRational(h(i, j)));
      } else {
        row.push_back(h(i, j));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Scalar T>
int PrintHessian(const Options& o, const Matroid& m, std::ostream& out) {
  PointInputs<T> p = ReadPoint<T>(o, m, m.size() + 1);
  SymMatrix<T> h = Hessian(m, p.c, p.q, p.alpha, p.w);
  nlohmann::json rows = MatrixRowsJson(h);
  if (o.json) {
    out << nlohmann::json{{"dim", h.dim()}, {"entries", rows}}.dump() << "\n";
    return kExitOk;
  }
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ' ';
      if constexpr (kIsExact<T>) {
        out << row[j].get<std::string>();
      } else {
        out << FormatDouble(row[j].get<double>());
      }
    }
    out << "\n";
  }
  return kExitOk;
}

template <Scalar T>
int Spectrum(const Options& o, const Matroid& m, std::ostream& out) {
  PointInputs<T> p = ReadPoint<T>(o, m, m.size() + 1);
  if (IsIdenticallyZero(m, p.c, p.q, p.alpha)) {
    if (o.json) {
      out << nlohmann::json{{"identically_zero", true}}.dump() << "\n";
    } else {
      out << "derivative is identically zero; no matrix\n";
    }
    return kExitOk;
  }
  SymMatrix<T> h = Hessian(m, p.c, p.q, p.alpha, p.w);
  std::vector<double> eigenvalues = Eigenvalues(h);
  nlohmann::json j = {{"identically_zero", false}};
  EigenSignature s;
  if constexpr (kIsExact<T>) {
    s = Signature(h);
  } else {
    FloatSignature fs = SignatureFloat(h);
    if (!fs.determinate) {
      j["indeterminate"] = true;
      j["tolerance"] = fs.tolerance;
    }
    s = fs.signature;
  }
  j["signature"] = SignatureToJson(s);
  nlohmann::json ev = nlohmann::json::array();
  for (double x : eigenvalues) ev.push_back(x);
  j["eigenvalues"] = ev;
  if (o.json) {
    out << j.dump() << "\n";
    return kExitOk;
  }
  out << s.ToString();
  if (j.contains("indeterminate")) out << " (indeterminate at tolerance)";
  out << "\neigenvalues:";
  for (double x : eigenvalues) out << ' ' << FormatDouble(x);
  out << "\n";
  return kExitOk;
}

inline void WriteText(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::kConfigError, "cannot write '" + path + "'");
  f << text;
}

inline std::vector<NamedMatroid> LoadSource(const std::string& source) {
  if (std::filesystem::is_regular_file(source)) {
    return {{std::filesystem::path(source).stem().string(), LoadMatroid(source)}};
  }
  return GenerateCorpus(source);
}

inline void PrintSummary(const VerificationReport& r, std::ostream& out) {
  nlohmann::json s = r.Summary();
  out << "campaign " << r.campaign << ": " << s["total"] << " checks, "
      << s["pass"] << " pass, " << s["fail"] << " fail, " << s["vacuous"]
      << " vacuous, " << s["not-applicable"] << " not-applicable\n";
  for (const auto& [name, t] : s["by_theorem"].items()) {
    out << "  " << name << ": " << t["pass"] << " pass, " << t["fail"]
        << " fail, " << t["vacuous"] << " vacuous, " << t["not-applicable"]
        << " not-applicable\n";
  }
  for (const auto& c : r.checks) {
    if (c.verdict == Verdict::kFail) {
      out << "FAIL " << c.theorem << " " << c.inputs.dump() << " "
          << c.witness.dump() << "\n";
    }
  }
}

inline void EmitReport(const VerificationReport& r, const Options& o,
                       std::ostream& out) {
  const std::string text = r.ToJson().dump(2) + "\n";
  if (!o.out.empty()) WriteText(o.out, text);
  if (o.json && o.out.empty()) {
    out << text;
  } else if (o.json) {
    out << r.Summary().dump() << "\n";
  } else {
    PrintSummary(r, out);
  }
}

inline int Verify(const Options& o, std::ostream& out) {
  if (!o.replay.empty()) {
    VerificationReport recorded =
        VerificationReport::FromJson(ParseJsonText(ReadFile(o.replay)));
    VerificationReport replayed = Replay(recorded, o.workers);
    int mismatches = 0;
    for (std::size_t i = 0; i < recorded.checks.size(); ++i) {
      mismatches += replayed.checks[i].verdict != recorded.checks[i].verdict;
    }
    EmitReport(replayed, o, out);
    if (!o.json) out << "verdict mismatches against the recorded report: " << mismatches << "\n";
    return replayed.failures() == 0 && mismatches == 0 ? kExitOk : kExitFail;
  }
  CampaignConfig config;
  config.campaign = o.theorem + ":" + o.source;
  if (!o.q_grid.empty()) config.q_grid = ParseRationalList(o.q_grid);
  config.trials = o.trials;
  config.seed = o.seed;
  config.workers = o.workers;
  config.timing = o.timing;
  if (!o.c.empty()) config.c = ParseRationalList(o.c);
  if (o.theorem != "all" &&
      std::find(TheoremNames().begin(), TheoremNames().end(), o.theorem) ==
          TheoremNames().end()) {
    throw Error(ErrorKind::kConfigError, "unknown theorem '" + o.theorem + "'");
  }
  config.Validate();
  VerificationReport r = RunCampaign(o.theorem, LoadSource(o.source), config);
  EmitReport(r, o, out);
  return r.failures() == 0 ? kExitOk : kExitFail;
}

inline int Corpus(const Options& o, std::ostream& out) {
  std::vector<NamedMatroid> corpus = GenerateCorpus(o.spec);
  nlohmann::json all = nlohmann::json::array();
  for (const auto& m : corpus) {
    nlohmann::json j = MatroidToJson(m.matroid);
    j["name"] = m.name;
    all.push_back(std::move(j));
  }
  if (!o.out.empty()) WriteText(o.out, all.dump(2) + "\n");
  if (o.json && o.out.empty()) {
    out << all.dump() << "\n";
    return kExitOk;
  }
  for (const auto& m : corpus) {
    out << m.name << " n=" << m.matroid.size() << " rank=" << m.matroid.Rank()
        << "\n";
  }
  out << corpus.size() << " matroids\n";
  return kExitOk;
}

inline int Mason(const Options& o, const Matroid& m, std::ostream& out) {
  const int n = m.size();
  std::vector<std::uint64_t> counts = IndependentSetCounts(m);
  nlohmann::json checks = nlohmann::json::array();
  bool failed = false;
  for (int k = 1; k < n; ++k) {
    Check c = CheckMasonCounts(m, 0, k);
    failed = failed || c.verdict == Verdict::kFail;
    checks.push_back({{"k", k},
                      {"verdict", VerdictName(c.verdict)},
                      {"equality", c.witness["equality"]},
                      {"all_subsets_independent",
                       c.witness["all_subsets_independent"]}});
  }
  if (o.json) {
    out << nlohmann::json{{"counts", counts}, {"checks", checks}}.dump() << "\n";
  } else {
    out << "I =";
    for (auto x : counts) out << ' ' << x;
    out << "\n";
    for (const auto& c : checks) {
      out << "k=" << c["k"] << " " << c["verdict"].get<std::string>()
          << (c["equality"].get<bool>() ? " (equality)" : "") << "\n";
    }
  }
  return failed ? kExitFail : kExitOk;
}

inline int ExitCodeFor(ErrorKind kind) {
  return kind == ErrorKind::kResourceLimit ? kExitResource : kExitUsage;
}

inline int Run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Potts model Hessian signatures and matroid inequalities"};
  app.require_subcommand(1);
  Options o;

  auto point_flags = [&](CLI::App* sub) {
    sub->add_option("matroid", o.matroid, "matroid JSON file")->required();
    sub->add_option("--q", o.q, "q as num/den (default 1)");
    sub->add_option("--w", o.w, "comma-separated weights (default all ones)");
    sub->add_option("--c", o.c, "coefficient sequence c_0..c_n (default ones)");
    sub->add_option("--alpha", o.alpha, "derivative orders alpha_0..alpha_n");
    sub->add_option("--mode", o.mode, "exact or float")
        ->check(CLI::IsMember({"exact", "float"}));
    sub->add_flag("--json", o.json, "machine-readable output");
  };
  CLI::App* eval = app.add_subcommand("eval", "evaluate Z^k, Z_{M,c} or a derivative");
  point_flags(eval);
  eval->add_option("--k", o.k, "stratum Z^k (w has n entries)");
  CLI::App* hessian = app.add_subcommand("hessian", "Hessian of a derivative");
  point_flags(hessian);
  CLI::App* spectrum = app.add_subcommand("spectrum", "inertia and eigenvalues");
  point_flags(spectrum);

  CLI::App* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->add_option("source", o.source,
                     "matroid JSON file or corpus spec (default: default)");
  verify->add_option("--theorem", o.theorem)
      ->check(CLI::IsMember({"qHR", "cqHR", "deg2", "ulc", "mason",
                             "simplification", "logconcavity", "all"}));
  verify->add_option("--trials", o.trials, "samples per configuration");
  verify->add_option("--seed", o.seed);
  verify->add_option("--q-grid", o.q_grid, "comma-separated q values in (0,1]");
  verify->add_option("--c", o.c, "fixed strictly log-concave c");
  verify->add_option("--out", o.out, "write the report JSON here");
  verify->add_option("--workers", o.workers, "threads (0 = all cores)");
  verify->add_option("--replay", o.replay, "re-run the checks of a report");
  verify->add_flag("--timing", o.timing, "record wall time in the summary");
  verify->add_flag("--json", o.json);

  CLI::App* corpus = app.add_subcommand("corpus", "list a generated corpus");
  corpus->add_option("spec", o.spec, "corpus spec")->required();
  corpus->add_option("--out", o.out, "write matroid JSON array here");
  corpus->add_flag("--json", o.json);

  CLI::App* mason = app.add_subcommand("mason", "Mason inequalities on counts");
  mason->add_option("matroid", o.matroid, "matroid JSON file")->required();
  mason->add_flag("--json", o.json);

  std::vector<const char*> argv = {"potts-hodge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const bool exact = o.mode == "exact";
    auto with_matroid = [&](auto&& fn) { return fn(LoadMatroid(o.matroid)); };
    if (*eval) {
      return with_matroid([&](const Matroid& m) {
        return exact ? Eval<Rational>(o, m, out) : Eval<double>(o, m, out);
      });
    }
    if (*hessian) {
      return with_matroid([&](const Matroid& m) {
        return exact ? PrintHessian<Rational>(o, m, out)
                     : PrintHessian<double>(o, m, out);
      });
    }
    if (*spectrum) {
      return with_matroid([&](const Matroid& m) {
        return exact ? Spectrum<Rational>(o, m, out) : Spectrum<double>(o, m, out);
      });
    }
    if (*verify) return Verify(o, out);
    if (*corpus) return Corpus(o, out);
    if (*mason) {
      return with_matroid([&](const Matroid& m) { return Mason(o, m, out); });
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  }
  return kExitUsage;
}

}  // namespace potts_hodge::cli
