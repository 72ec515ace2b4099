#include "fdehydro/lattice.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

namespace fdehydro {

Configuration jump_configuration(const Configuration& eta, TorusIndex x,
                                 TorusIndex y) {
  const int n = eta.n();
  if (!torus_neighbors(x, y, n))
    throw NotNeighborError("jump_configuration: |y-x| != 1 mod n");
  if (eta[x] < 1) throw EmptySiteError("jump_configuration: empty site");
  Configuration out = eta;
  out.add(x, -1);
  out.add(y, +1);
  return out;
}

bool partial_order_leq(const Configuration& eta1, const Configuration& eta2) {
  if (eta1.n() != eta2.n())
    throw SizeMismatchError("partial_order_leq: size mismatch");
  for (int x = 0; x < eta1.n(); ++x)
    if (eta1[x] > eta2[x]) return false;
  return true;
}

std::string configuration_to_csv(const Configuration& eta) {
  std::ostringstream os;
  os << "site,count\n";
  for (int x = 0; x < eta.n(); ++x) os << x << "," << eta[x] << "\n";
  return os.str();
}

std::string configuration_to_json(const Configuration& eta, double alpha) {
  nlohmann::json j;
  j["n"] = eta.n();
  j["alpha"] = alpha;
  j["data"] = eta.counts();
  return j.dump();
}

Configuration configuration_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<std::int64_t> counts = j.at("data").get<std::vector<std::int64_t>>();
  if (static_cast<int>(counts.size()) != j.at("n").get<int>())
    throw SizeMismatchError("configuration_from_json: n != data size");
  return Configuration(std::move(counts));
}

std::string profile_to_csv(const DensityProfile& u) {
  std::ostringstream os;
  os.precision(17);
  os << "site,value\n";
  for (int x = 0; x < u.n(); ++x) os << x << "," << u[x] << "\n";
  return os.str();
}

std::string profile_to_json(const DensityProfile& u, double alpha) {
  nlohmann::json j;
  j["n"] = u.n();
  j["alpha"] = alpha;
  j["data"] = u.values;
  return j.dump();
}

DensityProfile profile_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<double> v = j.at("data").get<std::vector<double>>();
  if (static_cast<int>(v.size()) != j.at("n").get<int>())
    throw SizeMismatchError("profile_from_json: n != data size");
  return DensityProfile(std::move(v));
}

}  // namespace fdehydro
