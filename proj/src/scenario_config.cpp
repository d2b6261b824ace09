#include "spcausal/scenario_config.hpp"

#include <cmath>
#include <stdexcept>

namespace spcausal {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("ScenarioConfig: " + what);
}

}  // namespace

void ScenarioConfig::validate() const {
  require(tauU2 > 0.0, "tauU2 must be positive");
  require(tauZ2 > 0.0, "tauZ2 must be positive");
  require(sigmaY2 > 0.0, "sigmaY2 must be positive");
  require(std::abs(phiU) < 1.0, "|phiU| must be < 1");
  require(std::abs(phiZ) < 1.0, "|phiZ| must be < 1");
  require(std::abs(rho) < 1.0, "|rho| must be < 1");
  require(betaC.size() == gammaC.size(), "betaC and gammaC must have equal length");

  const auto zero = [this](double v, const char* name) {
    require(v == 0.0, "scenario " + scenario_id + " requires " + name + " = 0");
  };
  if (scenario_id == "2a") {
    zero(betaZbar, "betaZbar");
    zero(betaUbar, "betaUbar");
  } else if (scenario_id == "2b") {
    zero(betaU, "betaU");
    zero(betaUbar, "betaUbar");
    zero(betaUZ, "betaUZ");
    zero(rho, "rho");
  } else if (scenario_id == "2c") {
    zero(betaZbar, "betaZbar");
  } else if (scenario_id == "2d") {
    zero(betaUbar, "betaUbar");
  } else if (scenario_id == "2e") {
    zero(betaU, "betaU");
    zero(betaUbar, "betaUbar");
  } else if (scenario_id == "2f" || scenario_id == "full") {
    // unconstrained
  } else {
    require(false, "unknown scenario id \"" + scenario_id + "\"");
  }
}

ScenarioConfig ScenarioConfig::checked(ScenarioConfig raw) {
  raw.validate();
  return raw;
}

}  // namespace spcausal
