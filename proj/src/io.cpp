#include "beurling/io.hpp"

#include <fstream>
#include <sstream>

namespace beurling {

void write_scan_csv(std::ostream& out, const BoundaryScan& scan) {
  out << "t,re,im,modulus,error_bound\n";
  for (std::size_t i = 0; i < scan.t.size(); ++i) {
    out << format_double(scan.t[i]) << "," << format_double(scan.values[i].real()) << ","
        << format_double(scan.values[i].imag()) << "," << format_double(scan.modulus[i])
        << "," << format_double(scan.error_bound[i]) << "\n";
  }
}

Json scan_summary_json(const BoundaryScan& scan) {
  Json j;
  j["n"] = scan.n;
  j["sigma"] = scan.sigma;
  j["riesz_order"] = scan.riesz_order;
  j["beta_hat"] = scan.beta_hat;
  j["residual"] = scan.residual;
  j["grid"] = {{"tmin", scan.t.empty() ? 0.0 : scan.t.front()},
               {"tmax", scan.t.empty() ? 0.0 : scan.t.back()},
               {"count", scan.t.size()}};
  if (!scan.potential_zero.empty()) j["potential_zero_flags"] = scan.potential_zero;
  return j;
}

void write_profile_csv(std::ostream& out, const RemainderProfile& prof) {
  out << "x,raw,normalized\n";
  for (std::size_t i = 0; i < prof.x.size(); ++i) {
    out << format_double(prof.x[i]) << "," << format_double(prof.raw[i]) << ","
        << format_double(prof.normalized[i]) << "\n";
  }
}

Json profile_summary_json(const RemainderProfile& prof) {
  Json j;
  j["target"] = to_string(prof.target);
  j["n"] = prof.n;
  if (prof.cesaro_m) j["m"] = *prof.cesaro_m;
  j["sup"] = prof.sup_norm;
  j["slope"] = prof.slope;
  j["verdict"] = to_string(prof.verdict);
  if (prof.a_used) j["a"] = *prof.a_used;
  return j;
}

void write_gap_report_csv(std::ostream& out, const GapCheckReport& rep) {
  out << "x,pi,Pi,gap,bound\n";
  for (const GapCheckRow& r : rep.rows) {
    out << format_double(r.x) << "," << format_double(r.pi) << "," << format_double(r.Pi)
        << "," << format_double(r.gap) << "," << format_double(r.bound) << "\n";
  }
}

namespace {

Json tail_model_json(const TailModel& tm) {
  Json j;
  j["C"] = tm.C;
  j["gamma"] = tm.gamma;
  if (tm.cesaro_sense) j["cesaro_sense"] = true;
  return j;
}

}  // namespace

Json system_meta_json(const GeneralizedNumberSystem& sys) {
  Json j;
  j["label"] = sys.label;
  j["x_max"] = sys.x_max;
  j["atoms_dN"] = sys.dN.atom_count();
  j["atoms_dPi"] = sys.dPi.atom_count();
  j["N_total"] = sys.dN.total_mass();
  j["Pi_total"] = sys.dPi.total_mass();
  if (sys.dN.density()) j["dN_bins"] = sys.dN.density()->mass.size();
  if (sys.dPi.density()) j["dPi_bins"] = sys.dPi.density()->mass.size();
  if (sys.primes) {
    j["prime_count"] = sys.primes->size();
    j["primes_complete"] = sys.primes_complete;
  }
  if (sys.density_a) j["density_a"] = *sys.density_a;
  if (sys.dN_construction_error > 0)
    j["dN_construction_error"] = sys.dN_construction_error;
  Json bounds;
  if (sys.n_cum_bound) bounds["N_cum"] = tail_model_json(*sys.n_cum_bound);
  if (sys.pi_cum_bound) bounds["Pi_cum"] = tail_model_json(*sys.pi_cum_bound);
  if (sys.n_remainder_bound)
    bounds["N_remainder"] = tail_model_json(*sys.n_remainder_bound);
  if (sys.pi_remainder_bound)
    bounds["Pi_remainder"] = tail_model_json(*sys.pi_remainder_bound);
  if (!bounds.empty()) j["growth_models"] = bounds;
  // approximate ties between distinct products merge under the declared
  // log-space tolerance; surfaced here so downstream readers know the rule
  j["tie_tolerance_log_rel"] = kTieEps;
  return j;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("cannot open for writing: " + path);
  out << contents;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace beurling
