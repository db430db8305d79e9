#include "annuli/radial_profile.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "annuli/errors.hpp"

namespace annuli {

RadialProfile::RadialProfile(std::vector<double> t, std::vector<double> h,
                             std::vector<double> hdot)
    : t_nodes(std::move(t)), h_values(std::move(h)), hdot_values(std::move(hdot)) {
  validate();
}

void RadialProfile::validate() const {
  const std::size_t n = t_nodes.size();
  if (n < 2 || h_values.size() != n || hdot_values.size() != n)
    throw domain_error("RadialProfile: need >= 2 nodes with matching arrays");
  if (std::abs(t_nodes.front() - 1.0) > 1e-12)
    throw domain_error("RadialProfile: first node must be t = 1");
  if (!(t_nodes.back() > 1.0))
    throw domain_error("RadialProfile: last node must exceed 1");
  if (std::abs(h_values.front() - 1.0) > 1e-10)
    throw domain_error("RadialProfile: H(1) must equal 1 (tolerance 1e-10)");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(t_nodes[i + 1] > t_nodes[i]))
      throw domain_error("RadialProfile: t nodes must increase strictly");
    if (!(h_values[i + 1] > h_values[i]))
      throw domain_error("RadialProfile: H samples must increase strictly");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool endpoint = (i == 0 || i + 1 == n);
    if (hdot_values[i] < 0.0 || (!endpoint && hdot_values[i] == 0.0))
      throw domain_error("RadialProfile: Hdot must be positive (>= 0 at endpoints)");
  }
}

bool RadialProfile::endpoint_degenerate() const {
  return hdot_values.front() == 0.0 || hdot_values.back() == 0.0;
}

void RadialProfile::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw error("cannot open " + path + " for writing");
  out << "t,H,Hdot\n" << std::setprecision(17);
  for (std::size_t i = 0; i < size(); ++i)
    out << t_nodes[i] << ',' << h_values[i] << ',' << hdot_values[i] << '\n';
}

RadialProfile RadialProfile::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,H,Hdot", 0) != 0)
    throw parse_error(path + ": expected header 't,H,Hdot'");
  std::vector<double> t, h, hd;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    double a, b, c;
    char c1, c2;
    if (!(ss >> a >> c1 >> b >> c2 >> c) || c1 != ',' || c2 != ',')
      throw parse_error(path + ": malformed row '" + line + "'");
    t.push_back(a);
    h.push_back(b);
    hd.push_back(c);
  }
  return RadialProfile(std::move(t), std::move(h), std::move(hd));
}

ProfileInterpolant::ProfileInterpolant(const RadialProfile& p)
    : curve_(p.t_nodes, p.h_values, p.hdot_values) {}

std::pair<double, double> ProfileInterpolant::operator()(double t) const {
  return {curve_.eval(t), curve_.derivative(t)};
}

double ProfileInterpolant::inverse(double s) const {
  const auto& ts = curve_.xs();
  const auto& hs = curve_.ys();
  const double pad = 1e-9 * (1.0 + std::abs(hs.back()));
  if (s < hs.front() - pad || s > hs.back() + pad)
    throw out_of_domain("ProfileInterpolant::inverse: value outside [1, R]");
  if (s <= hs.front()) return ts.front();
  if (s >= hs.back()) return ts.back();
  // locate the bracketing node interval, then bisect the interpolant
  std::size_t lo = 0, hi = ts.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (hs[mid] <= s ? lo : hi) = mid;
  }
  double a = ts[lo], b = ts[hi];
  for (int iter = 0; iter < 200 && (b - a) > 1e-12 * (1.0 + b); ++iter) {
    const double mid = 0.5 * (a + b);
    (curve_.eval(mid) <= s ? a : b) = mid;
  }
  return 0.5 * (a + b);
}

std::pair<double, double> eval_profile(const RadialProfile& p, double t) {
  return ProfileInterpolant(p)(t);
}

RadialProfile invert_profile(const RadialProfile& p, std::size_t n_nodes) {
  if (n_nodes < 2) throw domain_error("invert_profile: need >= 2 nodes");
  for (double hd : p.hdot_values)
    if (!(hd > 0.0))
      throw inversion_failure("invert_profile: profile not strictly monotone");
  const ProfileInterpolant interp(p);
  const double R = p.R();
  std::vector<double> s(n_nodes), f(n_nodes), fd(n_nodes);
  for (std::size_t k = 0; k < n_nodes; ++k) {
    const double sk =
        1.0 + (R - 1.0) * static_cast<double>(k) / static_cast<double>(n_nodes - 1);
    s[k] = sk;
    f[k] = (k == 0) ? 1.0 : (k + 1 == n_nodes ? p.r() : interp.inverse(sk));
    fd[k] = 1.0 / interp.hdot(f[k]);
  }
  return RadialProfile(std::move(s), std::move(f), std::move(fd));
}

}  // namespace annuli
