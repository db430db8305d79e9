#include "annuli/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include <json.hpp>

#include "annuli/errors.hpp"
#include "annuli/pchip.hpp"

namespace annuli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

using State = std::array<double, 2>;  // (H, Hdot)

struct TrajPoint {
  double t, H, Hd;
};

double phi_of(const TrajPoint& p) { return p.t * p.Hd / p.H; }
double s_of(const TrajPoint& p) { return p.H / p.t; }

}  // namespace

const char* to_string(ShootCase c) {
  switch (c) {
    case ShootCase::Balanced: return "balanced";
    case ShootCase::Expanding: return "expanding";
    case ShootCase::Contracting: return "contracting";
  }
  return "?";
}

const char* to_string(ConcavityVerdict v) {
  switch (v) {
    case ConcavityVerdict::ConcavityCase: return "concavity";
    case ConcavityVerdict::ConvexityCase: return "convexity";
    case ConcavityVerdict::Balanced: return "balanced";
    case ConcavityVerdict::Neither: return "neither";
  }
  return "?";
}

double el_rhs(double t, double H, double Hd, double c, double gamma) {
  const double c2 = c * c;
  const double num = Hd * Hd * (H - c2 * t * Hd) * (t + gamma * H * Hd);
  const double den = t * H * (H + c2 * gamma * t * Hd * Hd * Hd);
  return num / den;
}

namespace {

auto make_rhs(double c, double gamma) {
  return [c, gamma](double t, const State& y, State& dydt) {
    dydt[0] = y[1];
    dydt[1] = el_rhs(t, y[0], y[1], c, gamma);
  };
}

void check_positive(double q, double c, double gamma) {
  if (!(q > 0.0)) throw domain_error("integrate_el_ode: q must be positive");
  if (!(c > 0.0)) throw domain_error("integrate_el_ode: c must be positive");
  if (!(gamma > 0.0)) throw domain_error("integrate_el_ode: gamma must be positive");
}

}  // namespace

RadialProfile integrate_el_ode(double q, double c, double gamma, double t_max,
                               std::size_t n_nodes, const OdeOptions& opt) {
  check_positive(q, c, gamma);
  if (!(t_max > 1.0)) throw domain_error("integrate_el_ode: t_max must exceed 1");
  if (n_nodes < 4) throw domain_error("integrate_el_ode: need at least 4 nodes");

  auto rhs = make_rhs(c, gamma);
  std::vector<double> t(n_nodes), h(n_nodes), hd(n_nodes);
  State y{1.0, q};
  t[0] = 1.0;
  h[0] = 1.0;
  hd[0] = q;
  double cur = 1.0;
  for (std::size_t i = 1; i < n_nodes; ++i) {
    const double next = 1.0 + (t_max - 1.0) * static_cast<double>(i) /
                                  static_cast<double>(n_nodes - 1);
    y = rk45_integrate<2>(rhs, cur, y, next, opt);
    if (!(y[1] > 0.0))
      throw negative_slope("integrate_el_ode: Hdot lost positivity at t=" +
                           std::to_string(next));
    cur = next;
    t[i] = next;
    h[i] = y[0];
    hd[i] = y[1];
  }
  return RadialProfile(std::move(t), std::move(h), std::move(hd));
}

double el_ode_endpoint(double q, double c, double gamma, double t_max,
                       const OdeOptions& opt) {
  check_positive(q, c, gamma);
  if (t_max == 1.0) return 1.0;
  auto rhs = make_rhs(c, gamma);
  State y = rk45_integrate<2>(
      rhs, 1.0, State{1.0, q}, t_max, opt,
      [](double, const State& s) { return s[1] > 0.0; });
  if (!(y[1] > 0.0)) throw negative_slope("el_ode_endpoint: Hdot lost positivity");
  return y[0];
}

namespace {

struct TraceLimits {
  double s_lo = 0.0;
  double s_hi = kInf;
  double phi_one_eps = 1e-5;  // stop when Phi falls within this of 1
  double t_floor = 1e-9;
  double t_cap = 1e12;
  double phi_cap = 1e9;
};

// Accepted-step samples of one trajectory, starting at (1, 1, q). The
// start point itself is included. Stops at the configured limits.
std::vector<TrajPoint> trace(double q, double c, double gamma, bool forward,
                             const TraceLimits& lim, const OdeOptions& opt = {}) {
  auto rhs = make_rhs(c, gamma);
  std::vector<TrajPoint> pts;
  pts.push_back({1.0, 1.0, q});
  const bool phi_above_one = q > 1.0;
  const double t_end = forward ? lim.t_cap : lim.t_floor;
  auto observe = [&](double t, const State& y) {
    if (!(y[1] > 0.0)) throw negative_slope("trace: Hdot lost positivity");
    const double s = y[0] / t;
    const double phi = t * y[1] / y[0];
    // past the Phi = 1 fold the parametrization s(t) turns around; drop the
    // overshoot sample so the collected curve stays a function of s
    const bool phi_folded = phi_above_one ? (phi <= 1.0 + lim.phi_one_eps)
                                          : (phi >= 1.0 - lim.phi_one_eps);
    if (!phi_folded) pts.push_back({t, y[0], y[1]});
    if (s >= lim.s_hi || s <= lim.s_lo) {
      if (phi_folded) pts.push_back({t, y[0], y[1]});  // keep the s bracket
      return false;
    }
    if (phi_folded) return false;
    if (phi >= lim.phi_cap) return false;
    if (y[0] <= 1e-12) return false;
    return true;
  };
  OdeOptions o = opt;
  // absolute tolerance must stay far below H near t -> 0, where H itself
  // is small; Phi = t Hdot / H amplifies absolute error there
  o.atol = std::min(o.atol, 1e-13);
  o.rtol = std::min(o.rtol, 1e-12);
  o.initial_step = forward ? 1e-3 : -1e-3;
  try {
    rk45_integrate<2>(rhs, 1.0, State{1.0, q}, t_end, o, observe);
  } catch (const step_failure&) {
    // trajectory ran into the singular edge of its maximal interval;
    // the samples collected so far are still valid
  } catch (const negative_slope&) {
    // numerically grazing Hdot = 0 near the domain edge; keep the samples
  }
  return pts;
}

// Phi at the crossing s(t) = s_target between two accepted samples,
// refined by bisection on t with short re-integrations.
double refine_crossing(double c, double gamma, const TrajPoint& a,
                       const TrajPoint& b, double s_target) {
  auto rhs = make_rhs(c, gamma);
  double ta = a.t;
  State ya{a.H, a.Hd};
  double tb = b.t;
  const bool rising = s_of(b) > s_of(a);
  OdeOptions opt;
  opt.atol = 1e-13;
  opt.rtol = 1e-13;
  for (int iter = 0; iter < 80; ++iter) {
    const double tm = 0.5 * (ta + tb);
    if (tm == ta || tm == tb) break;
    const State ym = rk45_integrate<2>(rhs, ta, ya, tm, opt);
    const double sm = ym[0] / tm;
    if ((sm < s_target) == rising) {
      ta = tm;
      ya = ym;
    } else {
      tb = tm;
    }
    if (std::abs(tb - ta) < 1e-14 * std::max(1.0, std::abs(ta))) break;
  }
  return ta * ya[1] / ya[0];
}

}  // namespace

double phi_at(double q, double c, double gamma, double s) {
  check_positive(q, c, gamma);
  if (q == 1.0) throw singular_start("phi_at: the reduced equation is singular at q=1");
  if (!(s > 0.0)) throw domain_error("phi_at: s must be positive");
  if (s == 1.0) return q;

  const double inv_c = 1.0 / c;
  bool forward;
  if (s > 1.0) {
    forward = q > 1.0;  // s rises with t iff Phi > 1
  } else {
    if (q > 1.0 && q < inv_c) return kNaN;  // branch interval is (1, inf)
    forward = q < 1.0;
  }
  TraceLimits lim;
  if (s > 1.0) lim.s_hi = s * (1.0 + 1e-9);
  else lim.s_lo = s * (1.0 - 1e-9);

  const auto pts = trace(q, c, gamma, forward, lim);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const double s0 = s_of(pts[k - 1]), s1 = s_of(pts[k]);
    if ((s0 - s) * (s1 - s) <= 0.0)
      return refine_crossing(c, gamma, pts[k - 1], pts[k], s);
  }
  return kNaN;  // outside the maximal interval (e.g. s < a(q))
}

PhiCurve phi_curve(double q, double c, double gamma, double s_max,
                   std::size_t n_samples, double s_min) {
  check_positive(q, c, gamma);
  if (q == 1.0)
    throw singular_start("phi_curve: the reduced equation is singular at q=1");
  if (!(s_max > 1.0)) throw domain_error("phi_curve: s_max must exceed 1");
  if (n_samples < 8) throw domain_error("phi_curve: need at least 8 samples");

  const double inv_c = 1.0 / c;
  std::vector<TrajPoint> pts;

  // default lower cut for branches reaching toward s = 0
  const double smin_eff = s_min > 0.0 ? s_min : 0.02;
  TraceLimits fw, bw;
  fw.s_hi = s_max;
  fw.s_lo = smin_eff * (q < 1.0 ? 1e-6 : 1.0);  // q<1: the a(q) stop dominates
  bw.s_hi = s_max;
  bw.s_lo = smin_eff;

  if (q < 1.0) {
    // forward: s descends toward a(q); backward: s rises to s_max
    auto down = trace(q, c, gamma, true, fw);
    auto up = trace(q, c, gamma, false, bw);
    std::reverse(down.begin(), down.end());
    pts = std::move(down);
    pts.insert(pts.end(), up.begin() + 1, up.end());
  } else if (q < inv_c) {
    pts = trace(q, c, gamma, true, fw);  // interval (1, infinity) only
  } else {
    // q >= 1/c: s rises with t; backward reaches down toward s = 0
    auto down = trace(q, c, gamma, false, bw);
    auto up = trace(q, c, gamma, true, fw);
    std::reverse(down.begin(), down.end());
    pts = std::move(down);
    pts.insert(pts.end(), up.begin() + 1, up.end());
  }

  // strictly increasing s for interpolation
  std::vector<double> s, phi;
  s.reserve(pts.size());
  for (const auto& p : pts) {
    const double sv = s_of(p);
    if (!s.empty() && !(sv > s.back() * (1.0 + 1e-14))) continue;
    s.push_back(sv);
    phi.push_back(phi_of(p));
  }
  if (s.size() < 4)
    throw error("phi_curve: trajectory produced too few distinct samples");

  PhiCurve curve;
  curve.q = q;
  curve.right_endpoint_hint = kInf;
  if (q < 1.0) curve.left_endpoint_hint = s.front();       // ~ a(q)
  else if (q <= inv_c) curve.left_endpoint_hint = 1.0;
  else curve.left_endpoint_hint = 0.0;

  const Pchip interp(s, phi);
  const double lo = s.front(), hi = s.back();
  curve.s_nodes.resize(n_samples);
  curve.phi_values.resize(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double sk = lo + (hi - lo) * static_cast<double>(k) /
                               static_cast<double>(n_samples - 1);
    curve.s_nodes[k] = sk;
    curve.phi_values[k] = interp.eval(sk);
  }
  return curve;
}

void PhiCurve::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw error("cannot open " + path + " for writing");
  out << "s,phi\n" << std::setprecision(17);
  for (std::size_t k = 0; k < s_nodes.size(); ++k)
    out << s_nodes[k] << ',' << phi_values[k] << '\n';
}

CaseInfo case_classify(double q, double c) {
  if (!(q > 0.0) || !(c > 0.0)) throw domain_error("case_classify: need q, c > 0");
  const double inv_c = 1.0 / c;
  const double tol = 1e-12 * std::max(1.0, inv_c);
  if (std::abs(q - inv_c) <= tol) return {ShootCase::Balanced, "constant"};
  if (q > inv_c) return {ShootCase::Expanding, "increasing"};
  return {ShootCase::Contracting, "decreasing"};
}

ShootResult shoot(const AnnulusPair& pair, double c, double gamma, double tol,
                  std::size_t n_nodes) {
  check_positive(1.0, c, gamma);
  if (!(tol > 0.0)) throw domain_error("shoot: tol must be positive");
  const double r = pair.r, R = pair.R;

  const auto endpoint = [&](double q) { return el_ode_endpoint(q, c, gamma, r); };

  double lo = std::min(1.0 / c, 1.0) / 16.0;
  double hi = std::max(1.0 / c, 1.0) * 16.0;
  const double expand_cap = std::ldexp(1.0, 40);
  double guard = 1.0;
  while (endpoint(lo) > R) {
    lo *= 0.5;
    guard *= 2.0;
    if (guard > expand_cap)
      throw bracket_failure("shoot: lower bracket expansion exceeded its bound");
  }
  guard = 1.0;
  while (endpoint(hi) < R) {
    hi *= 2.0;
    guard *= 2.0;
    if (guard > expand_cap)
      throw bracket_failure("shoot: upper bracket expansion exceeded its bound");
  }

  double q = 0.5 * (lo + hi), hq = endpoint(q);
  for (int iter = 0; iter < 300; ++iter) {
    if (std::abs(hq - R) <= tol * R) break;
    (hq < R ? lo : hi) = q;
    const double next = 0.5 * (lo + hi);
    if (next == q) break;
    q = next;
    hq = endpoint(q);
  }
  if (std::abs(hq - R) > tol * R)
    throw bracket_failure("shoot: bisection failed to meet tolerance");

  ShootResult res;
  res.r = r;
  res.R = R;
  res.c = c;
  res.gamma = gamma;
  res.q = q;
  res.profile = integrate_el_ode(q, c, gamma, r, n_nodes);
  const double balanced_tol = std::max(1e-6, 10.0 * tol) * std::max(1.0, 1.0 / c);
  res.case_label = (std::abs(q - 1.0 / c) <= balanced_tol)
                       ? ShootCase::Balanced
                       : (q > 1.0 / c ? ShootCase::Expanding : ShootCase::Contracting);

  const auto& p = res.profile;
  double mlo = kInf, mhi = -kInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = c * c * p.t_nodes[i] * p.hdot_values[i] - p.h_values[i];
    mlo = std::min(mlo, m);
    mhi = std::max(mhi, m);
  }
  res.concavity_margin_min = mlo;
  res.concavity_margin_max = mhi;
  const double ctol = 1e-8 * (1.0 + R);
  if (res.case_label == ShootCase::Balanced)
    res.concavity = ConcavityVerdict::Balanced;
  else if (mlo >= -ctol && c <= 1.0 + 1e-12)
    res.concavity = ConcavityVerdict::ConcavityCase;
  else if (mhi <= ctol && c >= 1.0 - 1e-12)
    res.concavity = ConcavityVerdict::ConvexityCase;
  else
    res.concavity = ConcavityVerdict::Neither;

  double sup = 0.0;
  const double dt = p.t_nodes[1] - p.t_nodes[0];
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const double hpp = (p.hdot_values[i + 1] - p.hdot_values[i - 1]) / (2.0 * dt);
    const double f = el_rhs(p.t_nodes[i], p.h_values[i], p.hdot_values[i], c, gamma);
    sup = std::max(sup, std::abs(hpp - f));
  }
  res.ode_residual_sup = sup;
  return res;
}

std::string ShootResult::to_json() const {
  nlohmann::json j;
  j["r"] = r;
  j["R"] = R;
  j["c"] = c;
  j["gamma"] = gamma;
  j["q"] = q;
  j["case"] = annuli::to_string(case_label);
  j["concavity"] = annuli::to_string(concavity);
  j["residual_sup"] = ode_residual_sup;
  j["concavity_margin_min"] = concavity_margin_min;
  j["concavity_margin_max"] = concavity_margin_max;
  j["profile"] = {{"t", profile.t_nodes},
                  {"H", profile.h_values},
                  {"Hdot", profile.hdot_values}};
  return j.dump();
}

ConcaveCaseBounds concave_case_bounds(const ShootResult& res, double c) {
  if (res.concavity != ConcavityVerdict::ConcavityCase)
    throw precondition_unmet(
        "concave_case_bounds: requires a certified concavity-case result");
  ConcaveCaseBounds b;
  b.q = res.q;
  b.c = c;
  b.r = res.r;
  b.R = res.R;
  const double c2 = c * c;
  const double base = 1.0 / c2 - 1.0;
  b.bound1_meaningful = base > 0.0 && std::abs(std::log(base)) > 1e-14;
  b.bound1_rhs = b.bound1_meaningful ? std::log(res.q * c2) / std::log(base) : kNaN;
  b.bound1_satisfied = b.bound1_meaningful && res.r <= b.bound1_rhs;
  b.bound2_lo = std::pow(res.r, 1.0 / c2);
  b.bound2_hi = res.r * res.q * c2;
  b.bound2_satisfied =
      b.bound2_lo <= res.R * (1.0 + 1e-12) && res.R <= b.bound2_hi * (1.0 + 1e-12);
  b.bound3_rhs = 1.0 / (1.0 - c2 + c2 / res.R);
  b.bound3_satisfied = res.r < b.bound3_rhs;
  b.alarm = !(b.bound1_satisfied || !b.bound1_meaningful) || !b.bound2_satisfied ||
            !b.bound3_satisfied;
  return b;
}

std::string ConcaveCaseBounds::to_json() const {
  nlohmann::json j;
  j["q"] = q;
  j["c"] = c;
  j["r"] = r;
  j["R"] = R;
  j["bound1"] = {{"rhs", bound1_meaningful ? nlohmann::json(bound1_rhs)
                                           : nlohmann::json(nullptr)},
                 {"meaningful", bound1_meaningful},
                 {"satisfied", bound1_satisfied}};
  j["bound2"] = {{"lo", bound2_lo}, {"hi", bound2_hi}, {"satisfied", bound2_satisfied}};
  j["bound3"] = {{"rhs", bound3_rhs}, {"satisfied", bound3_satisfied}};
  j["consistency_alarm"] = alarm;
  return j.dump();
}

namespace {

LimitSequence make_sequence(const std::string& name, double s, double target,
                            std::vector<double> qs, double c, double gamma,
                            bool expect_increasing_phi) {
  LimitSequence seq;
  seq.name = name;
  seq.s = s;
  seq.claimed_target = target;
  seq.qs = std::move(qs);
  for (double q : seq.qs) seq.phis.push_back(phi_at(q, c, gamma, s));

  bool mono = true;
  for (std::size_t k = 1; k < seq.phis.size(); ++k) {
    if (std::isnan(seq.phis[k]) || std::isnan(seq.phis[k - 1])) mono = false;
    else if (expect_increasing_phi ? seq.phis[k] < seq.phis[k - 1]
                                   : seq.phis[k] > seq.phis[k - 1])
      mono = false;
  }
  seq.monotone_trend = mono;
  seq.increments_shrink = true;
  for (std::size_t k = 2; k < seq.phis.size(); ++k) {
    const double prev = std::abs(seq.phis[k - 1] - seq.phis[k - 2]);
    const double cur = std::abs(seq.phis[k] - seq.phis[k - 1]);
    if (!(cur <= prev)) seq.increments_shrink = false;
  }
  if (std::isinf(target)) {
    seq.final_gap = 0.0;
    seq.claim_consistent = !seq.phis.empty() && !std::isnan(seq.phis.back()) &&
                           seq.phis.back() > 2.0 * seq.phis.front();
    seq.pass = mono && seq.claim_consistent;  // unbounded growth is the claim
  } else {
    const double first_gap = std::abs(seq.phis.front() - target);
    seq.final_gap = std::abs(seq.phis.back() - target);
    seq.claim_consistent = seq.final_gap <= std::max(0.05 * first_gap, 1e-3);
    seq.pass = mono && seq.increments_shrink;
  }
  return seq;
}

}  // namespace

LimitReport phi_limit_suite(double c, double gamma, std::vector<double> s_probe) {
  if (!(c > 0.0) || c >= 1.0)
    throw domain_error("phi_limit_suite: the limit family assumes 0 < c < 1");
  LimitReport rep;
  const double ic = 1.0 / c;
  for (double s : s_probe) {
    if (!(s > 0.0)) throw domain_error("phi_limit_suite: probes must be positive");
    rep.sequences.push_back(make_sequence(
        "q->inf", s, kInf, {2.0 * ic, 8.0 * ic, 32.0 * ic}, c, gamma, true));
    rep.sequences.push_back(make_sequence(
        "q->1/c+", s, ic,
        {ic * 1.5, ic * 1.1, ic * 1.02, ic * 1.004}, c, gamma, false));
    if (s > 1.0) {
      rep.sequences.push_back(make_sequence(
          "q->1/c-", s, ic,
          {1.0 + (ic - 1.0) * 0.5, 1.0 + (ic - 1.0) * 0.9, 1.0 + (ic - 1.0) * 0.98,
           1.0 + (ic - 1.0) * 0.996},
          c, gamma, true));
      rep.sequences.push_back(make_sequence(
          "q->1+", s, 1.0,
          {1.0 + (ic - 1.0) * 0.5, 1.0 + (ic - 1.0) * 0.1, 1.0 + (ic - 1.0) * 0.02},
          c, gamma, false));
      rep.sequences.push_back(
          make_sequence("q->1-", s, 1.0, {0.5, 0.9, 0.98}, c, gamma, true));
      rep.sequences.push_back(
          make_sequence("q->0+", s, 0.0, {0.5, 0.1, 0.02, 0.004}, c, gamma, false));
    }
  }

  // non-crossing of integral curves: q -> Phi_q(s) increasing
  rep.q_monotonicity = true;
  for (double s : s_probe) {
    std::vector<std::pair<double, double>> vals;
    for (const auto& seq : rep.sequences)
      if (seq.s == s)
        for (std::size_t k = 0; k < seq.qs.size(); ++k)
          if (!std::isnan(seq.phis[k])) vals.emplace_back(seq.qs[k], seq.phis[k]);
    std::sort(vals.begin(), vals.end());
    for (std::size_t k = 1; k < vals.size(); ++k) {
      if (vals[k].first - vals[k - 1].first < 1e-12) continue;
      if (vals[k].second < vals[k - 1].second) rep.q_monotonicity = false;
    }
  }

  rep.pass = rep.q_monotonicity;
  for (const auto& seq : rep.sequences) rep.pass = rep.pass && seq.pass;
  return rep;
}

std::string LimitReport::to_json() const {
  nlohmann::json j;
  j["q_monotonicity"] = q_monotonicity;
  j["pass"] = pass;
  j["sequences"] = nlohmann::json::array();
  for (const auto& s : sequences) {
    nlohmann::json e;
    e["name"] = s.name;
    e["s"] = s.s;
    e["claimed_target"] = std::isinf(s.claimed_target)
                              ? nlohmann::json("inf")
                              : nlohmann::json(s.claimed_target);
    e["q"] = s.qs;
    e["phi"] = s.phis;
    e["monotone_trend"] = s.monotone_trend;
    e["increments_shrink"] = s.increments_shrink;
    e["final_gap_to_claim"] = s.final_gap;
    e["claim_consistent"] = s.claim_consistent;
    e["pass"] = s.pass;
    j["sequences"].push_back(e);
  }
  return j.dump();
}

}  // namespace annuli
