#pragma once

// JSON and CSV serialization: representation files, series files, matrices,
// and the run configuration. Complex numbers serialize as [re, im] pairs of
// decimal strings at full working precision so other tools can reparse them
// without loss.

#include "logvvmf/logq.hpp"
#include "logvvmf/mlde.hpp"
#include "logvvmf/rep.hpp"

#include <json.hpp>

#include <string>

namespace logvvmf {

using Json = nlohmann::ordered_json;

struct RunConfig {
  unsigned precision = kDefaultDigits;
  long N_trunc = 100;
  long Nq = 8;
  unsigned long seed = 12345;
  std::string format = "json";  // json | csv
  int threads = 1;

  // file values, then LOGVVMF_PRECISION, then explicit flags
  static RunConfig load(const std::string& config_path);
  Json to_json() const;
};

Json cplx_to_json(const Cplx& z);
Cplx cplx_from_json(const Json& j);

Json matrix_to_json(const CMatrix& m);

Json rep_to_json(const Representation& rho);
Representation rep_from_json(const Json& j);
Representation load_representation(const std::string& path);

Json series_to_json(const CSeries& f);
CSeries series_from_json(const Json& j);
CSeries load_series(const std::string& path);

// exact-mode parse; throws when any coefficient entry is not Gaussian rational
QSeries qseries_from_json(const Json& j);
bool json_series_is_rational(const Json& j);

// one row per q-index n: n, exponent, then re/im per tau-degree
std::string series_to_csv(const CSeries& f);

Json mlde_to_json(const Mlde<Cplx>& m);
Json mlde_to_json(const Mlde<GaussRat>& m);

// "a,b,c,d" -> GammaElement
GammaElement parse_gamma(const std::string& s);
// "re,im" -> Cplx
Cplx parse_cplx_pair(const std::string& s);

Json manifest_json(const std::string& command, const RunConfig& cfg, double wall_ms);

}  // namespace logvvmf
