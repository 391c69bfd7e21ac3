#include "opsys/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace opsys {

using nlohmann::json;

const char* version() noexcept { return OPSYS_VERSION_STRING; }

std::string_view to_string(ClaimStatus status) noexcept {
  switch (status) {
    case ClaimStatus::Pass: return "pass";
    case ClaimStatus::Fail: return "fail";
    case ClaimStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::optional<ClaimStatus> parse_claim_status(std::string_view text) noexcept {
  if (text == "pass") return ClaimStatus::Pass;
  if (text == "fail") return ClaimStatus::Fail;
  if (text == "inconclusive") return ClaimStatus::Inconclusive;
  return std::nullopt;
}

bool operator==(const ClaimRecord& a, const ClaimRecord& b) {
  const bool same_residual =
      a.residual == b.residual || (std::isnan(a.residual) && std::isnan(b.residual));
  return a.id == b.id && a.anchor == b.anchor && a.status == b.status && same_residual &&
         a.witness == b.witness;
}

namespace {

[[noreturn]] void malformed(const std::string& why) {
  throw Error(ErrorKind::PreconditionViolated, "report JSON: " + why);
}

json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  malformed("expected a number");
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"field", to_string(m.field())}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const json& j) {
  const auto field_name = j.at("field").get<std::string>();
  Field field;
  if (field_name == to_string(Field::Real)) {
    field = Field::Real;
  } else if (field_name == to_string(Field::Complex)) {
    field = Field::Complex;
  } else {
    malformed("unknown field '" + field_name + "'");
  }
  const json& rows = j.at("entries");
  const auto n = static_cast<Eigen::Index>(rows.size());
  DenseMatrix values(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != n) malformed("witness is not square");
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& entry = row.at(static_cast<std::size_t>(k));
      if (!entry.is_array() || entry.size() != 2) malformed("entries must be [re, im] pairs");
      values(i, k) = Scalar(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return Matrix(std::move(values), field);
}

json claims_to_json(const Report& report) {
  json claims = json::array();
  for (const ClaimRecord& c : report.claims) {
    claims.push_back({{"id", c.id},
                      {"anchor", c.anchor},
                      {"status", to_string(c.status)},
                      {"residual", number_to_json(c.residual)},
                      {"witness", c.witness ? matrix_to_json(*c.witness) : json(nullptr)}});
  }
  return claims;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_json(const Report& report, int indent) {
  json j;
  j["version"] = report.version;
  j["config"] = report.config;
  j["duration_seconds"] = number_to_json(report.duration_seconds);
  j["claims"] = claims_to_json(report);
  return j.dump(indent);
}

std::string claims_json(const Report& report) { return claims_to_json(report).dump(); }

Report parse_report(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
  try {
    Report r;
    r.version = j.at("version").get<std::string>();
    r.config = j.at("config").get<std::map<std::string, std::string>>();
    r.duration_seconds = number_from_json(j.at("duration_seconds"));
    for (const json& c : j.at("claims")) {
      ClaimRecord record;
      record.id = c.at("id").get<std::string>();
      record.anchor = c.at("anchor").get<std::string>();
      const auto status = parse_claim_status(c.at("status").get<std::string>());
      if (!status) malformed("unknown status");
      record.status = *status;
      record.residual = number_from_json(c.at("residual"));
      if (!c.at("witness").is_null()) record.witness = matrix_from_json(c.at("witness"));
      r.claims.push_back(std::move(record));
    }
    return r;
  } catch (const json::exception& e) {
    malformed(e.what());
  }
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out.precision(17);
  out << "id,anchor,status,residual\n";
  for (const ClaimRecord& c : report.claims) {
    out << csv_field(c.id) << ',' << csv_field(c.anchor) << ',' << to_string(c.status) << ','
        << c.residual << '\n';
  }
  return out.str();
}

}  // namespace opsys
