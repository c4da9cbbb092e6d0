#include "logvvmf/io.hpp"

#include "logvvmf/errors.hpp"

#include <boost/version.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace logvvmf {

namespace {

Json version_block() {
  Json v;
  v["logvvmf"] = "0.1.0";
  v["gmp"] = gmp_version;
  v["mpfr"] = mpfr_get_version();
  v["boost"] = BOOST_LIB_VERSION;
  return v;
}

Real real_from_json(const Json& j) {
  if (j.is_string()) return parse_real(j.get<std::string>());
  if (j.is_number_integer()) return Real(j.get<long>());
  if (j.is_number_float()) return Real(j.get<double>());
  throw std::invalid_argument("expected a number or decimal string");
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_number_float()) {
    Rat q(j.get<double>());  // exact binary value of the double
    q.canonicalize();
    return q;
  }
  throw std::invalid_argument("expected a number or rational string");
}

bool json_is_rational(const Json& j) {
  if (j.is_number_integer()) return true;
  if (j.is_number_float()) return true;
  if (!j.is_string()) return false;
  try {
    parse_rational(j.get<std::string>());
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

Basis basis_from_string(const std::string& s) {
  if (s == "binomial") return Basis::Binomial;
  if (s == "power") return Basis::Power;
  if (s == "scaledlog") return Basis::ScaledLog;
  throw std::invalid_argument("unknown basis '" + s + "'");
}

}  // namespace

RunConfig RunConfig::load(const std::string& config_path) {
  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw Error("cannot open config file '" + config_path + "'");
    Json j = Json::parse(in);
    if (j.contains("precision")) cfg.precision = j["precision"].get<unsigned>();
    if (j.contains("N_trunc")) cfg.N_trunc = j["N_trunc"].get<long>();
    if (j.contains("Nq")) cfg.Nq = j["Nq"].get<long>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  }
  if (const char* env = std::getenv("LOGVVMF_PRECISION")) {
    long v = std::atol(env);
    if (v > 0) cfg.precision = static_cast<unsigned>(v);
  }
  return cfg;
}

Json RunConfig::to_json() const {
  Json j;
  j["precision"] = precision;
  j["N_trunc"] = N_trunc;
  j["Nq"] = Nq;
  j["seed"] = seed;
  j["format"] = format;
  j["threads"] = threads;
  return j;
}

Json cplx_to_json(const Cplx& z) {
  return Json::array({to_decimal_string(z.re), to_decimal_string(z.im)});
}

Cplx cplx_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2) return Cplx(real_from_json(j[0]), real_from_json(j[1]));
  if (j.is_number() || j.is_string()) return Cplx(real_from_json(j));
  throw std::invalid_argument("expected a complex [re, im] pair");
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(cplx_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json rep_to_json(const Representation& rho) {
  Json j;
  j["dim"] = rho.dim();
  j["rho_S"] = matrix_to_json(rho.rho_S());
  Json blocks = Json::array();
  for (const auto& b : rho.spec().blocks)
    blocks.push_back(Json::array({b.size, to_decimal_string(b.mu)}));
  j["blocks"] = blocks;
  return j;
}

Representation rep_from_json(const Json& j) {
  if (!j.contains("rho_S") || !j.contains("blocks"))
    throw std::invalid_argument("representation file needs rho_S and blocks");
  BlockSpec spec;
  for (const auto& b : j["blocks"]) {
    JordanBlock blk;
    blk.size = b.at(0).get<int>();
    blk.mu = rat_from_json(b.at(1));
    spec.blocks.push_back(blk);
  }
  int p = spec.dim();
  if (j.contains("dim") && j["dim"].get<int>() != p)
    throw std::invalid_argument("representation file: dim disagrees with blocks");
  const Json& rows = j["rho_S"];
  if (static_cast<int>(rows.size()) != p)
    throw std::invalid_argument("representation file: rho_S has the wrong size");
  CMatrix s(p, p);
  for (int i = 0; i < p; ++i)
    for (int c = 0; c < p; ++c) s(i, c) = cplx_from_json(rows[i][c]);
  return Representation(std::move(s), std::move(spec));
}

Representation load_representation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open representation file '" + path + "'");
  return rep_from_json(Json::parse(in));
}

Json series_to_json(const CSeries& f) {
  Json j;
  j["mu"] = to_decimal_string(f.mu());
  j["basis"] = basis_name(f.basis());
  j["order"] = f.order();
  Json terms = Json::array();
  for (const auto& [k, v] : f.terms())
    terms.push_back(Json::array({k.first, k.second, cplx_to_json(v)}));
  j["terms"] = terms;
  return j;
}

CSeries series_from_json(const Json& j) {
  CSeries f(rat_from_json(j.at("mu")),
            j.value("order", 0l),
            basis_from_string(j.value("basis", std::string("binomial"))));
  for (const auto& t : j.at("terms"))
    f.add_coeff(t.at(0).get<long>(), t.at(1).get<int>(), cplx_from_json(t.at(2)));
  return f;
}

CSeries load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open series file '" + path + "'");
  return series_from_json(Json::parse(in));
}

bool json_series_is_rational(const Json& j) {
  for (const auto& t : j.at("terms")) {
    const Json& c = t.at(2);
    if (c.is_array()) {
      if (!json_is_rational(c.at(0)) || !json_is_rational(c.at(1))) return false;
    } else if (!json_is_rational(c)) {
      return false;
    }
  }
  return true;
}

QSeries qseries_from_json(const Json& j) {
  QSeries f(rat_from_json(j.at("mu")),
            j.value("order", 0l),
            basis_from_string(j.value("basis", std::string("binomial"))));
  for (const auto& t : j.at("terms")) {
    const Json& c = t.at(2);
    GaussRat coef;
    if (c.is_array()) coef = GaussRat(rat_from_json(c.at(0)), rat_from_json(c.at(1)));
    else coef = GaussRat(rat_from_json(c));
    f.add_coeff(t.at(0).get<long>(), t.at(1).get<int>(), coef);
  }
  return f;
}

std::string series_to_csv(const CSeries& f) {
  int dmax = f.max_tau_degree();
  std::ostringstream os;
  os << "n,exponent";
  for (int j = 0; j <= dmax; ++j) os << ",j" << j << "_re,j" << j << "_im";
  os << "\n";
  std::map<long, std::vector<Cplx>> rows;
  for (const auto& [k, v] : f.terms()) {
    auto& row = rows[k.first];
    row.resize(dmax + 1);
    row[k.second] = v;
  }
  for (auto& [n, row] : rows) {
    row.resize(dmax + 1);
    os << n << "," << to_decimal_string(to_real(Rat(n) + f.mu()));
    for (int j = 0; j <= dmax; ++j)
      os << "," << to_decimal_string(row[j].re) << "," << to_decimal_string(row[j].im);
    os << "\n";
  }
  return os.str();
}

namespace {

template <class F>
Json mlde_to_json_impl(const Mlde<F>& m) {
  Json j;
  j["order"] = m.order;
  j["lead_weight"] = m.lead_weight;
  j["base_weight"] = m.base_weight;
  Json gs = Json::array();
  for (const auto& gj : m.g) {
    Json g;
    g["weight"] = gj.weight;
    Json monos = Json::array();
    for (const auto& [mono, c] : gj.coeffs) {
      Json e;
      e["a"] = mono.first;
      e["b"] = mono.second;
      if constexpr (field_traits<F>::exact) {
        e["coeff"] = Json::array({to_decimal_string(c.re), to_decimal_string(c.im)});
      } else {
        e["coeff"] = cplx_to_json(c);
      }
      monos.push_back(std::move(e));
    }
    g["monomials"] = monos;
    gs.push_back(std::move(g));
  }
  j["g"] = gs;
  return j;
}

}  // namespace

Json mlde_to_json(const Mlde<Cplx>& m) { return mlde_to_json_impl(m); }
Json mlde_to_json(const Mlde<GaussRat>& m) { return mlde_to_json_impl(m); }

GammaElement parse_gamma(const std::string& s) {
  std::istringstream is(s);
  std::string tok;
  std::vector<Int> vals;
  while (std::getline(is, tok, ',')) vals.emplace_back(tok);
  if (vals.size() != 4) throw std::invalid_argument("expected --matrix a,b,c,d");
  return GammaElement(vals[0], vals[1], vals[2], vals[3]);
}

Cplx parse_cplx_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return Cplx(parse_real(s));
  return Cplx(parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1)));
}

Json manifest_json(const std::string& command, const RunConfig& cfg, double wall_ms) {
  Json j;
  j["command"] = command;
  j["config"] = cfg.to_json();
  j["versions"] = version_block();
  j["wall_ms"] = wall_ms;
  return j;
}

}  // namespace logvvmf
