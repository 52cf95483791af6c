#include "riordan/serialize.hpp"

#include <algorithm>

namespace riordan {

Json to_json(const Fps& s) {
  Json out = Json::array();
  for (const auto& c : s.coeffs()) out.push_back(c.to_string());
  return out;
}

Json to_json(const CyclotomicFps& s) {
  Json out = Json::array();
  for (const auto& c : s.coeffs()) out.push_back(c.to_string("z"));
  return out;
}

Json to_json(const RiordanPair& p) { return {{"g", to_json(p.g())}, {"f", to_json(p.f())}}; }

Json to_json(const RiordanMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(m.at(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ConjugacyWitness& w) {
  return {{"conjugator", to_json(w.conjugator)}, {"target", to_json(w.target)}, {"sign", w.sign}};
}

Json to_json(const NormalFormDescriptor& d) {
  Json out{{"p", d.p}, {"lambda", d.lambda.to_string()}, {"series", to_json(d.series)}};
  if (d.conjugator) out["conjugator"] = to_json(*d.conjugator);
  return out;
}

Json to_json(const ReversibilityReport& r) {
  Json out{{"verdict", std::string(to_string(r.verdict))}, {"details", r.details}};
  if (r.verdict == ReversibilityVerdict::ObstructedAtDegree ||
      r.verdict == ReversibilityVerdict::MultiplierObstruction)
    out["obstruction_degree"] = r.obstruction_degree;
  if (r.witness) {
    out["witness"] = to_json(*r.witness);
    out["field"] = r.witness_field ? r.witness_field->name() : "Q";
  }
  return out;
}

Json to_json(const NormalFormFit& fit) {
  Json out{{"found", fit.found()}, {"log", fit.log}};
  if (fit.descriptor) out["normal_form"] = to_json(*fit.descriptor);
  if (fit.obstruction_degree) {
    out["obstruction_degree"] = *fit.obstruction_degree;
    out["reason"] = fit.reason;
  }
  return out;
}

Json to_json(const ConjugatorResult& r) {
  Json out{{"status", r.status == ConjugatorStatus::Found ? "Found" : "InfeasibleInSubgroup"},
           {"target_sign", r.target_sign},
           {"log", r.log}};
  if (r.witness) out["witness"] = to_json(*r.witness);
  if (r.certificate)
    out["certificate"] = {{"degree", r.certificate->degree}, {"reason", r.certificate->reason}};
  if (r.outside_witness) out["outside_witness"] = to_json(*r.outside_witness);
  return out;
}

std::string series_text(const Fps& s) {
  std::string out;
  for (std::size_t k = 0; k <= s.order(); ++k) {
    const Rational& c = s[k];
    if (c.is_zero()) continue;
    const bool negative = c.sign() < 0;
    const Rational mag = negative ? -c : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (k == 0) {
      out += mag.to_string();
      continue;
    }
    if (!mag.is_one()) out += mag.to_string() + "*";
    out += "t";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

std::string matrix_text(const RiordanMatrix& m) {
  const std::size_t k = m.size();
  std::vector<std::size_t> width(k, 0);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c <= r; ++c) width[c] = std::max(width[c], m.at(r, c).to_string().size());
  std::string out;
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c <= r; ++c) {
      const std::string cell = m.at(r, c).to_string();
      if (c) out += "  ";
      out += std::string(width[c] - cell.size(), ' ') + cell;
    }
    out += "\n";
  }
  return out;
}

std::string matrix_csv(const RiordanMatrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (c) out += ",";
      out += m.at(r, c).to_string();
    }
    out += "\n";
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace riordan
