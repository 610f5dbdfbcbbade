#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "infospec/classical.hpp"
#include "infospec/divergences.hpp"
#include "infospec/expansion.hpp"
#include "infospec/protocols.hpp"
#include "infospec/serialization.hpp"
#include "infospec/verify.hpp"

namespace {

using namespace infospec;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

Json base_record(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["module_version"] = kVersion;
  j["command"] = command;
  return j;
}

void emit(const Json& record, const std::string& out_path, const std::string& format) {
  std::string payload;
  if (format == "csv" && record.contains("csv")) {
    payload = record.at("csv").get<std::string>();
  } else {
    payload = record.dump(2);
    payload.push_back('\n');
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write " + out_path);
    out << payload;
  } else {
    std::cout << payload;
  }
}

std::pair<int, int> parse_dims(const std::vector<int>& dims, Eigen::Index total) {
  if (dims.size() != 2) throw InputError("bipartite input needs --dims a,b");
  if (static_cast<Eigen::Index>(dims[0]) * dims[1] != total)
    throw InputError("--dims do not factorize the input dimension");
  return {dims[0], dims[1]};
}

BipartitePureState pure_from_density(const Matrix& m, int da, int db) {
  EigenSystem es = eig_decompose(m);
  if (es.values(0) <= 0.0 || (es.values.size() > 1 && es.values(1) > 1e-9 * es.values(0)))
    throw InputError("input density matrix is not (numerically) rank one");
  Vector amp = es.vectors.col(0) * std::sqrt(es.values(0));
  amp /= amp.norm();
  return BipartitePureState(da, db, amp);
}

// a source can arrive as a density matrix or as an ensemble; the ensemble
// contributes through its average state
Matrix load_source_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j = Json::parse(in);
  if (j.contains("probs")) return ensemble_from_json(j).average();
  return matrix_from_json(j);
}

CqChannel load_cq_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j = Json::parse(in);
  if (!j.contains("outputs")) throw InputError("cq channel JSON requires 'outputs'");
  CqChannel w;
  for (const auto& jm : j.at("outputs")) w.outputs.push_back(matrix_from_json(jm));
  if (j.contains("prior")) {
    RealVector p(j.at("prior").size());
    for (std::size_t i = 0; i < j.at("prior").size(); ++i)
      p(static_cast<Eigen::Index>(i)) = j.at("prior").at(i).get<double>();
    w.prior = p;
  }
  return w;
}

Json divergence_json(const DivergenceResult& r) {
  Json j;
  j["gamma"] = format_number(r.gamma);
  j["achieved_gap"] = format_number(r.achieved_gap);
  j["bracket"] = {format_number(r.bracket.first), format_number(r.bracket.second)};
  j["bracket_tolerance"] = format_number(r.tol);
  j["gap_tolerance"] = format_number(kGapTol);
  j["infinite"] = r.infinite;
  return j;
}

Json expansion_json(const ExpansionCoefficients& c) {
  Json j;
  j["a"] = format_number(c.a);
  j["b"] = format_number(c.b);
  j["dispersion"] = format_number(c.dispersion);
  j["eps"] = format_number(c.eps);
  j["remainder_tag"] = c.remainder == RemainderTag::LogN ? "O(log n)" : "o(sqrt n)";
  j["degenerate_dispersion"] = c.degenerate;
  return j;
}

int cmd_compute(const std::string& quantity, const std::vector<std::string>& files, double eps,
                double gamma, long n_copies, const std::vector<int>& dims,
                const std::string& out, const std::string& format) {
  Json rec = base_record("compute");
  rec["quantity"] = quantity;
  rec["epsilon"] = format_number(eps);

  auto need_files = [&](std::size_t n) {
    if (files.size() != n)
      throw InputError("quantity '" + quantity + "' expects " + std::to_string(n) + " input file(s)");
  };

  if (quantity == "underline-ds" || quantity == "overline-ds") {
    need_files(2);
    const Matrix rho = load_matrix(files[0]);
    const Matrix sigma = load_matrix(files[1]);
    const Direction dir = quantity == "underline-ds" ? Direction::Underline : Direction::Overline;
    const DivergenceResult r = info_spectrum_divergence(rho, sigma, eps, dir);
    rec["result"] = divergence_json(r);
    std::cout << quantity << " = " << format_number(r.gamma) << "\n";
  } else if (quantity == "th-ds") {
    need_files(2);
    const ThDivergence r = ds_tomamichel_hayashi(load_matrix(files[0]), load_matrix(files[1]), eps);
    rec["result"] = {{"value", format_number(r.value)},
                     {"left_limit", r.left_limit},
                     {"infinite", r.infinite},
                     {"breakpoint_snap_tolerance", format_number(1e-7)}};
    std::cout << "th-ds = " << format_number(r.value) << (r.left_limit ? " (left limit)" : "")
              << "\n";
  } else if (quantity == "dh") {
    need_files(2);
    const HypothesisTest r = hypothesis_testing_divergence(load_matrix(files[0]),
                                                           load_matrix(files[1]), eps);
    rec["result"] = {{"value", format_number(r.value)},
                     {"type1_pass", format_number(r.type1_pass)},
                     {"beta", format_number(r.beta)},
                     {"infinite", r.infinite},
                     {"constraint_tolerance", format_number(kGapTol)}};
    std::cout << "dh = " << format_number(r.value) << "\n";
  } else if (quantity == "dmax" || quantity == "dmax0") {
    need_files(2);
    const double smoothing = quantity == "dmax0" ? 0.0 : eps;
    const MaxDivergence r = max_divergence(load_matrix(files[0]), load_matrix(files[1]), smoothing);
    rec["result"] = {{"lower", format_number(r.lower)},
                     {"upper", format_number(r.upper)},
                     {"exact", r.exact},
                     {"infinite", r.infinite},
                     {"certificate_tolerance", format_number(1e-9)}};
    std::cout << "dmax in [" << format_number(r.lower) << ", " << format_number(r.upper) << "]"
              << (r.exact ? " (exact)" : "") << "\n";
  } else if (quantity == "relent") {
    need_files(2);
    const RelEntStats r = relative_entropy_stats(load_matrix(files[0]), load_matrix(files[1]));
    rec["result"] = {{"D", format_number(r.D)},
                     {"V", format_number(r.V)},
                     {"s", format_number(r.s)},
                     {"infinite", r.infinite},
                     {"support_tolerance", format_number(kSupportTol)}};
    std::cout << "D = " << format_number(r.D) << ", V = " << format_number(r.V) << "\n";
  } else if (quantity == "trace-gap") {
    need_files(2);
    const double t = trace_gap(load_matrix(files[0]), load_matrix(files[1]), gamma);
    rec["gamma"] = format_number(gamma);
    rec["result"] = format_number(t);
    std::cout << "trace-gap = " << format_number(t) << "\n";
  } else if (quantity == "distances") {
    need_files(2);
    const DistanceSet ds = distances(load_matrix(files[0]), load_matrix(files[1]));
    rec["result"] = {{"fidelity", format_number(ds.fidelity)},
                     {"purified", format_number(ds.purified)},
                     {"trace_distance", format_number(ds.trace_distance)},
                     {"positive_part", format_number(ds.positive_part)}};
    std::cout << "F = " << format_number(ds.fidelity) << ", P = " << format_number(ds.purified)
              << ", d = " << format_number(ds.trace_distance) << "\n";
  } else if (quantity == "nussbaum-szkola") {
    need_files(2);
    const ClassicalPair pair = nussbaum_szkola(load_matrix(files[0]), load_matrix(files[1]));
    const RelEntStats st = pair.moments();
    rec["result"] = {{"alphabet", pair.p.size()},
                     {"D", format_number(st.D)},
                     {"V", format_number(st.V)},
                     {"infinite", st.infinite}};
    std::cout << "D(P||Q) = " << format_number(st.D) << ", V(P||Q) = " << format_number(st.V)
              << "\n";
  } else if (quantity == "classical-ds-underline" || quantity == "classical-ds-overline") {
    // cdf-quantile form on the n-fold Nussbaum-Szkola reduction
    need_files(2);
    const ClassicalPair pair = nussbaum_szkola(load_matrix(files[0]), load_matrix(files[1]));
    const ClassicalLLR lln = iid_llr_distribution(pair, n_copies);
    const Direction dir = quantity == "classical-ds-underline" ? Direction::Underline
                                                               : Direction::Overline;
    const ClassicalQuantile q = classical_info_spectrum(lln, eps, dir);
    rec["n"] = n_copies;
    rec["result"] = {{"value", format_number(q.value)},
                     {"left_limit", q.left_limit},
                     {"infinite", q.infinite},
                     {"atoms", lln.support.size()}};
    std::cout << quantity << " = " << format_number(q.value)
              << (q.left_limit ? " (left limit)" : "") << "\n";
  } else if (quantity == "tensor-ds-underline" || quantity == "tensor-ds-overline") {
    need_files(2);
    const Direction dir = quantity == "tensor-ds-underline" ? Direction::Underline
                                                            : Direction::Overline;
    const DivergenceResult r = tensor_power_divergence(load_matrix(files[0]),
                                                       load_matrix(files[1]),
                                                       static_cast<int>(n_copies), eps, dir);
    rec["n"] = n_copies;
    rec["result"] = divergence_json(r);
    std::cout << quantity << " = " << format_number(r.gamma) << "\n";
  } else if (quantity == "entropy-underline" || quantity == "entropy-overline") {
    need_files(1);
    const Direction dir =
        quantity == "entropy-underline" ? Direction::Underline : Direction::Overline;
    const DerivedEntropyResult r =
        derived_entropy(EntropyKind::Entropy, dir, load_matrix(files[0]), eps);
    rec["result"] = {{"value", format_number(r.value)}, {"infinite", r.infinite}};
    std::cout << quantity << " = " << format_number(r.value) << "\n";
  } else if (quantity == "cond-entropy-underline" || quantity == "cond-entropy-overline" ||
             quantity == "mutual-underline" || quantity == "mutual-overline") {
    need_files(1);
    const Matrix m = load_matrix(files[0]);
    const auto [da, db] = parse_dims(dims, m.rows());
    const bool mutual = quantity.rfind("mutual", 0) == 0;
    const Direction dir =
        quantity.find("underline") != std::string::npos ? Direction::Underline : Direction::Overline;
    const DerivedEntropyResult r = derived_entropy(
        mutual ? EntropyKind::Mutual : EntropyKind::Conditional, dir, m, eps, da, db);
    rec["result"] = {{"value", format_number(r.value)},
                     {"infinite", r.infinite},
                     {"upper_envelope", r.upper_envelope}};
    std::cout << quantity << " = " << format_number(r.value)
              << (r.upper_envelope ? " (multi-start upper envelope of the min)" : "") << "\n";
  } else {
    throw InputError("unknown quantity: " + quantity);
  }
  emit(rec, out, format);
  return kExitOk;
}

int cmd_expand(const std::string& task, const std::vector<std::string>& files, double eps,
               double delta, long n, const std::vector<int>& dims, const std::string& direction,
               const std::string& mode, std::uint64_t seed, const std::string& out,
               const std::string& format) {
  Json rec = base_record("expand");
  rec["task"] = task;
  rec["epsilon"] = format_number(eps);

  auto need_files = [&](std::size_t k) {
    if (files.size() != k)
      throw InputError("task '" + task + "' expects " + std::to_string(k) + " input file(s)");
  };

  if (task == "divergence") {
    need_files(2);
    const Direction dir = direction == "overline" ? Direction::Overline : Direction::Underline;
    rec["result"] =
        expansion_json(divergence_expansion(load_matrix(files[0]), load_matrix(files[1]), eps, dir));
  } else if (task == "source-visible") {
    need_files(1);
    rec["result"] = expansion_json(source_coding_expansion(load_source_state(files[0]), eps));
  } else if (task == "source-blind") {
    need_files(1);
    const BlindBracket br = source_coding_expansion_blind(load_source_state(files[0]), eps);
    rec["result"] = {{"lower", expansion_json(br.lower)}, {"upper", expansion_json(br.upper)}};
  } else if (task == "dense-coding") {
    need_files(1);
    const Matrix m = load_matrix(files[0]);
    const auto [da, db] = parse_dims(dims, m.rows());
    ChannelSearchOptions opts;
    opts.seed = seed;
    const DenseCodingExpansion dc = dense_coding_expansion(
        m, da, db, eps, mode == "optimize" ? ChannelMode::Optimize : ChannelMode::Identity, opts);
    rec["result"] = expansion_json(dc.coeffs);
    rec["result"]["product_encoding_assumption"] = dc.product_encoding;
    rec["result"]["channel_mode"] = mode;
  } else if (task == "distill" || task == "dilute") {
    need_files(1);
    const Matrix m = load_matrix(files[0]);
    const auto [da, db] = parse_dims(dims, m.rows());
    const BipartitePureState psi = pure_from_density(m, da, db);
    rec["result"] = expansion_json(
        entanglement_expansion(psi, eps, task == "distill" ? Task::Distill : Task::Dilute));
  } else if (task == "irreversibility") {
    need_files(1);
    const Matrix m = load_matrix(files[0]);
    const auto [da, db] = parse_dims(dims, m.rows());
    const BipartitePureState psi = pure_from_density(m, da, db);
    const IrreversibilityGap gap = irreversibility_gap(psi, eps, delta, n);
    rec["delta"] = format_number(delta);
    rec["n"] = n;
    rec["result"] = {{"gap_bits", format_number(gap.gap_bits)},
                     {"coefficient", format_number(gap.coefficient)},
                     {"crossover_n", gap.crossover_n},
                     {"degenerate", gap.degenerate}};
  } else if (task == "cq") {
    need_files(1);
    const CqChannel w = load_cq_channel(files[0]);
    CapacityOptions opts;
    opts.seed = seed;
    const DispersionSet ds = cq_capacity(w, opts);
    Json j = expansion_json(cq_expansion(w, eps, opts));
    j["capacity"] = format_number(ds.capacity);
    j["v_min"] = format_number(ds.v_min);
    j["v_max"] = format_number(ds.v_max);
    j["maximizer_count"] = ds.maximizer_set.size();
    j["maximizer_tolerance"] = format_number(ds.maximizer_tol);
    rec["result"] = std::move(j);
  } else {
    throw InputError("unknown expansion task: " + task);
  }
  if (rec["result"].contains("a"))
    std::cout << task << ": a = " << rec["result"]["a"].get<std::string>()
              << ", b = " << rec["result"]["b"].get<std::string>() << "\n";
  emit(rec, out, format);
  return kExitOk;
}

int cmd_protocol(const std::string& name, const std::vector<std::string>& files, double eps,
                 double eta, double delta, double c, long m, const std::vector<int>& dims,
                 std::uint64_t seed, const std::string& out, const std::string& format) {
  Json rec = base_record("protocol");
  rec["protocol"] = name;

  auto code_json = [](const CodeRecord& r) {
    Json j;
    j["M"] = r.m;
    j["gamma"] = format_number(r.gamma);
    j["value"] = format_number(r.value);
    j["fidelity_sq"] = format_number(r.fidelity_sq);
    j["fidelity"] = format_number(r.fidelity());
    j["p_fail"] = format_number(r.p_fail);
    j["delta_rounding"] = format_number(r.delta_rounding);
    switch (r.merit) {
      case FigureOfMerit::EnsembleAverage: j["merit"] = "ensemble_average_fidelity"; break;
      case FigureOfMerit::Entanglement: j["merit"] = "entanglement_fidelity"; break;
      case FigureOfMerit::ProtocolFidelitySquared: j["merit"] = "protocol_fidelity_squared"; break;
      case FigureOfMerit::AverageError: j["merit"] = "average_error"; break;
    }
    j["junk_signals"] = r.junk_signals;
    return j;
  };

  if (name == "visible") {
    if (files.size() != 1) throw InputError("protocol visible expects an ensemble file");
    const PureStateEnsemble ens = load_ensemble(files[0]);
    const CodeRecord r = visible_code(ens, eps);
    rec["epsilon"] = format_number(eps);
    rec["result"] = code_json(r);
    std::cout << "visible code: M = " << r.m << ", F-bar = " << format_number(r.value) << "\n";
  } else if (name == "blind") {
    if (files.size() != 1) throw InputError("protocol blind expects a state file");
    const DensityOperator rho(load_matrix(files[0]), TraceClass::Normalized);
    const CodeRecord r = blind_code(rho, eps);
    rec["epsilon"] = format_number(eps);
    rec["result"] = code_json(r);
    std::cout << "blind code: M = " << r.m << ", F_e = " << format_number(r.value) << "\n";
  } else if (name == "concentrate") {
    if (files.size() != 1) throw InputError("protocol concentrate expects a pure-state file");
    const Matrix mm = load_matrix(files[0]);
    const auto [da, db] = parse_dims(dims, mm.rows());
    const ConcentrationOutcome outc = concentrate(pure_from_density(mm, da, db), eps, eta);
    rec["epsilon"] = format_number(eps);
    rec["eta"] = format_number(eta);
    rec["result"] = code_json(outc.record);
    Json cert;
    cert["valid"] = outc.certificate.valid;
    cert["worst_violation"] = format_number(outc.certificate.worst_violation);
    rec["result"]["majorization_certificate"] = std::move(cert);
    std::cout << "concentrate: M = " << outc.record.m
              << ", P_fail = " << format_number(outc.record.p_fail) << "\n";
  } else if (name == "dilute") {
    if (files.size() != 1) throw InputError("protocol dilute expects a pure-state file");
    const Matrix mm = load_matrix(files[0]);
    const auto [da, db] = parse_dims(dims, mm.rows());
    const BipartitePureState psi = pure_from_density(mm, da, db);
    const CodeRecord r = m > 0 ? dilute(psi, m) : dilute_at_epsilon(psi, eps);
    rec["epsilon"] = format_number(eps);
    rec["result"] = code_json(r);
    std::cout << "dilute: M = " << r.m << ", F^2 = " << format_number(r.fidelity_sq) << "\n";
  } else if (name == "weyl") {
    const int d = dims.empty() ? 2 : dims[0];
    const std::vector<Matrix> us = weyl_set(d);
    double worst = 0.0;
    Rng rng(seed);
    for (int t = 0; t < 5; ++t) {
      const Matrix omega = random_state(d, rng).matrix();
      Matrix twirl = Matrix::Zero(d, d);
      for (const Matrix& u : us) twirl += u * omega * u.adjoint();
      worst = std::max(worst, max_abs(twirl - static_cast<double>(d) * Matrix::Identity(d, d)));
    }
    rec["result"] = {{"d", d},
                     {"count", us.size()},
                     {"twirl_residual", format_number(worst)},
                     {"tolerance", format_number(1e-12)}};
    std::cout << "weyl: " << us.size() << " unitaries, twirl residual " << format_number(worst)
              << "\n";
  } else if (name == "bounds") {
    if (files.empty()) throw InputError("protocol bounds expects input file(s) and --task");
    throw InputError("use 'protocol bounds-<task>' (bounds-source-visible, bounds-source-blind, "
                     "bounds-distill, bounds-dilute, bounds-dense-coding, bounds-cq)");
  } else if (name.rfind("bounds-", 0) == 0) {
    const std::string task = name.substr(7);
    OneShotInputs inputs;
    EpsilonSpec slacks(eps, eta > 0 ? std::optional<double>(eta) : std::nullopt,
                       delta > 0 ? std::optional<double>(delta) : std::nullopt,
                       c > 0 ? std::optional<double>(c) : std::nullopt);
    OneShotBracket br;
    std::optional<DensityOperator> rho;
    std::optional<BipartitePureState> psi;
    Matrix mm;
    CqChannel w;
    if (task == "source-visible" || task == "source-blind") {
      if (files.size() != 1) throw InputError("bounds: expects one state file");
      rho.emplace(load_matrix(files[0]), TraceClass::Normalized);
      inputs.rho = &*rho;
      br = one_shot_bounds(task == "source-visible" ? Task::SourceVisible : Task::SourceBlind,
                           inputs, slacks);
    } else if (task == "distill" || task == "dilute") {
      if (files.size() != 1) throw InputError("bounds: expects one pure-state file");
      mm = load_matrix(files[0]);
      const auto [da, db] = parse_dims(dims, mm.rows());
      psi.emplace(pure_from_density(mm, da, db));
      inputs.psi = &*psi;
      br = one_shot_bounds(task == "distill" ? Task::Distill : Task::Dilute, inputs, slacks);
    } else if (task == "dense-coding") {
      if (files.size() != 1) throw InputError("bounds: expects one bipartite state file");
      mm = load_matrix(files[0]);
      const auto [da, db] = parse_dims(dims, mm.rows());
      inputs.rho_ab = &mm;
      inputs.dim_a = da;
      inputs.dim_b = db;
      inputs.search.seed = seed;
      br = one_shot_bounds(Task::DenseCoding, inputs, slacks);
    } else if (task == "cq") {
      if (files.size() != 1) throw InputError("bounds: expects one channel file");
      w = load_cq_channel(files[0]);
      inputs.cq = &w;
      inputs.search.seed = seed;
      br = one_shot_bounds(Task::CqChannel, inputs, slacks);
    } else {
      throw InputError("unknown bounds task: " + task);
    }
    rec["task"] = task;
    rec["epsilon"] = format_number(eps);
    rec["result"] = {{"lower", format_number(br.lower)},
                     {"upper", format_number(br.upper)},
                     {"bracket_guaranteed", br.bracket_guaranteed}};
    std::cout << "bounds(" << task << "): [" << format_number(br.lower) << ", "
              << format_number(br.upper) << "]\n";
  } else if (name == "pgm") {
    if (files.size() != 1) throw InputError("protocol pgm expects a bipartite state file");
    const Matrix mm = load_matrix(files[0]);
    const auto [da, db] = parse_dims(dims, mm.rows());
    const PgmSimulation sim = pgm_dense_coding_simulation(mm, da, db, m > 0 ? m : 2,
                                                          eta > 0 ? eta : 1.5, c > 0 ? c : 1.0,
                                                          seed);
    rec["result"] = {{"code_size", sim.code_size},
                     {"p_error", format_number(sim.p_error)},
                     {"hn_bound", format_number(sim.hn_bound)},
                     {"within_bound", sim.within_bound},
                     {"informational", true}};
    std::cout << "pgm: p_e = " << format_number(sim.p_error)
              << " (informational; existence bound " << format_number(sim.hn_bound) << ")\n";
  } else {
    throw InputError("unknown protocol: " + name);
  }
  emit(rec, out, format);
  return kExitOk;
}

int cmd_figure(const std::string& which, const std::vector<std::string>& files, double eps,
               double delta, std::vector<long> n_grid, const std::vector<int>& dims,
               const std::string& out) {
  if (files.size() != 1) throw InputError("figure expects one state file");
  if (n_grid.empty()) n_grid = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw InputError("figure: n-grid must be increasing");

  std::ostringstream csv;
  csv << "n,value,a,b,remainder_tag\n";
  if (which == "rate_curve" || which == "below_entropy") {
    const Matrix rho = load_source_state(files[0]);
    const ExpansionCoefficients coeff = source_coding_expansion(rho, eps);
    if (which == "below_entropy")
      csv << "# S(rho)," << format_number(coeff.a) << "\n";
    for (long n : n_grid)
      csv << n << ',' << format_number(coeff.rate(static_cast<double>(n))) << ','
          << format_number(coeff.a) << ',' << format_number(coeff.b) << ",O(log n)\n";
  } else if (which == "irreversibility") {
    const Matrix mm = load_matrix(files[0]);
    const auto [da, db] = parse_dims(dims, mm.rows());
    const BipartitePureState psi = pure_from_density(mm, da, db);
    const IrreversibilityGap head = irreversibility_gap(psi, eps, delta, n_grid.front());
    csv << "# crossover_n," << head.crossover_n << "\n";
    csv << "# degenerate," << (head.degenerate ? 1 : 0) << "\n";
    for (long n : n_grid) {
      const IrreversibilityGap g = irreversibility_gap(psi, eps, delta, n);
      csv << n << ',' << format_number(g.gap_bits) << ",0," << format_number(g.coefficient)
          << ",exact\n";
    }
  } else {
    throw InputError("unknown figure: " + which);
  }

  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw InputError("cannot write " + out);
    f << csv.str();
  } else {
    std::cout << csv.str();
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, std::vector<int> dims,
               std::vector<double> eps_grid, bool strict, const std::string& out,
               const std::string& format) {
  VerifyConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  if (!dims.empty()) cfg.dims = std::move(dims);
  if (!eps_grid.empty()) cfg.eps_grid = std::move(eps_grid);
  cfg.strict = strict;

  const VerificationReport report = run_verification(suite, cfg);
  for (const auto& p : report.properties)
    std::cout << (p.passed() ? "pass" : "FAIL") << "  " << p.name << "  trials=" << p.trials
              << " failures=" << p.failures << " worst=" << format_number(p.worst_violation)
              << " tol=" << format_number(p.tolerance) << "\n";

  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw InputError("cannot write " + out);
    f << (format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n");
  }
  return report.all_passed() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-shot and second-order quantum information rates"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::vector<int> dims;
  std::vector<long> n_grid;
  std::vector<double> eps_grid;
  std::string out, format = "json", quantity, direction = "underline", mode = "identity";
  double eps = 0.25, eta = 0.0, delta = 0.0, cval = 0.0, gamma = 0.0;
  std::uint64_t seed = 7;
  int trials = 300;
  long m = 0, n = 1;
  bool strict = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "write the JSON/CSV record to this path");
    sub->add_option("--format", format, "record format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", seed, "64-bit seed for any randomized search");
    sub->set_config("--config", "", "key=value defaults; explicit flags win");
  };

  CLI::App* compute = app.add_subcommand("compute", "evaluate a divergence or entropy");
  compute->add_option("quantity", quantity)->required();
  compute->add_option("files", files, "matrix JSON input file(s)");
  compute->add_option("--eps", eps, "epsilon in (0,1)");
  compute->add_option("--gamma", gamma, "gamma for trace-gap");
  compute->add_option("--n", n, "copy count for classical-ds / tensor-ds");
  compute->add_option("--dims", dims, "bipartite factor dims a,b")->delimiter(',');
  add_common(compute);

  CLI::App* expand = app.add_subcommand("expand", "second-order expansion coefficients");
  expand->add_option("task", quantity)->required();
  expand->add_option("files", files);
  expand->add_option("--eps", eps);
  expand->add_option("--delta", delta, "second error threshold (irreversibility)");
  expand->add_option("--n", n, "copy count for gap evaluation");
  expand->add_option("--dims", dims)->delimiter(',');
  expand->add_option("--direction", direction)->check(CLI::IsMember({"underline", "overline"}));
  expand->add_option("--mode", mode)->check(CLI::IsMember({"identity", "optimize"}));
  add_common(expand);

  CLI::App* protocol = app.add_subcommand("protocol", "run a one-shot protocol construction");
  protocol->add_option("name", quantity)->required();
  protocol->add_option("files", files);
  protocol->add_option("--eps", eps);
  protocol->add_option("--eta", eta);
  protocol->add_option("--delta", delta);
  protocol->add_option("--c", cval);
  protocol->add_option("--m", m, "code size / Schmidt rank");
  protocol->add_option("--dims", dims)->delimiter(',');
  add_common(protocol);

  CLI::App* figure = app.add_subcommand("figure", "emit figure data as CSV");
  figure->add_option("which", quantity)->required();
  figure->add_option("files", files);
  figure->add_option("--eps", eps);
  figure->add_option("--delta", delta);
  figure->add_option("--n-grid", n_grid)->delimiter(',');
  figure->add_option("--dims", dims)->delimiter(',');
  figure->add_option("--out", out);
  figure->add_option("--seed", seed);
  figure->set_config("--config", "", "key=value defaults; explicit flags win");

  CLI::App* verify = app.add_subcommand("verify", "run a randomized verification suite");
  verify->add_option("suite", quantity)->required();
  verify->add_option("--trials", trials);
  verify->add_option("--dims", dims)->delimiter(',');
  verify->add_option("--eps-grid", eps_grid)->delimiter(',');
  verify->add_flag("--strict", strict, "abort on the first failing property");
  add_common(verify);

  try {
    app.parse(argc, argv);
    if (compute->parsed())
      return cmd_compute(quantity, files, eps, gamma, n, dims, out, format);
    if (expand->parsed())
      return cmd_expand(quantity, files, eps, delta, n, dims, direction, mode, seed, out, format);
    if (protocol->parsed())
      return cmd_protocol(quantity, files, eps, eta, delta, cval, m, dims, seed, out, format);
    if (figure->parsed()) return cmd_figure(quantity, files, eps, delta, n_grid, dims, out);
    if (verify->parsed())
      return cmd_verify(quantity, seed, trials, dims, eps_grid, strict, out, format);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const infospec::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
