#include "natfun/report.hpp"

#include <sstream>

namespace natfun {

std::string factorization_text(const Factorization& f) {
  std::string out;
  for (const auto& entry : f.primes) {
    if (!out.empty()) out += '*';
    out += entry.prime.get_str();
    out += '^';
    out += std::to_string(entry.exponent);
  }
  if (f.unresolved_cofactor) {
    if (!out.empty()) out += '*';
    out += f.unresolved_cofactor->get_str();
  }
  return out;
}

Factorization parse_factorization_text(const std::string& text) {
  Factorization f;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, '*')) {
    if (part.empty()) continue;
    auto caret = part.find('^');
    if (caret == std::string::npos) {
      f.unresolved_cofactor = BigInt(part, 10);
    } else {
      f.primes.push_back({BigInt(part.substr(0, caret), 10),
                          std::stoi(part.substr(caret + 1))});
    }
  }
  return f;
}

std::string provenance_to_string(Provenance p) {
  switch (p) {
    case Provenance::Searched: return "searched";
    case Provenance::PolynomialCertificate: return "polynomial-certificate";
    case Provenance::ExponentialCertificate: return "exponential-certificate";
  }
  return "?";
}

ScanRow outcome_row(const std::string& function_text, const SearchOutcome& o) {
  ScanRow row;
  row.function_text = function_text;
  row.primes_before = o.primes_before;
  if (o.witness) {
    row.smallest_composite_index = mpz_get_si(o.witness->index.get_mpz_t());
    row.composite_value = o.witness->value;
    row.factorization = o.witness->factorization;
  }
  return row;
}

namespace {

constexpr const char* kScanHeader =
    "function,smallest_composite_n,value,factorization,primes_before";

std::string csv_cells(const ScanRow& r) {
  std::string line = r.function_text;
  line += ',';
  if (r.smallest_composite_index) line += std::to_string(*r.smallest_composite_index);
  line += ',';
  if (r.composite_value) line += r.composite_value->get_str();
  line += ',';
  if (r.factorization) line += factorization_text(*r.factorization);
  line += ',';
  line += std::to_string(r.primes_before);
  return line;
}

}  // namespace

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = kScanHeader;
  out += '\n';
  for (const ScanRow& r : rows) {
    out += csv_cells(r);
    out += '\n';
  }
  return out;
}

Json scan_json(const std::vector<ScanRow>& rows) {
  Json arr = Json::array();
  for (const ScanRow& r : rows) {
    Json obj;
    obj["function"] = r.function_text;
    obj["smallest_composite_n"] =
        r.smallest_composite_index ? Json(*r.smallest_composite_index) : Json(nullptr);
    obj["value"] = r.composite_value ? Json(r.composite_value->get_str()) : Json(nullptr);
    obj["factorization"] =
        r.factorization ? Json(factorization_text(*r.factorization)) : Json(nullptr);
    obj["primes_before"] = r.primes_before;
    arr.push_back(std::move(obj));
  }
  return arr;
}

std::string scan_table(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  for (const ScanRow& r : rows) {
    out << r.function_text << ": ";
    if (r.smallest_composite_index) {
      out << "composite at n = " << *r.smallest_composite_index;
      if (r.composite_value) {
        out << ", value " << r.composite_value->get_str();
        if (r.factorization && !(r.factorization->primes.empty() &&
                                 !r.factorization->unresolved_cofactor)) {
          out << " = " << factorization_text(*r.factorization);
        } else if (*r.composite_value == 1) {
          out << " (1 is not prime)";
        }
      }
    } else if (r.budget_exceeded) {
      out << "budget exceeded";
    } else {
      out << "no composite found";
    }
    out << " after " << r.primes_before << " prime outputs\n";
  }
  return out.str();
}

std::string witness_csv(const std::string& function_text,
                        const CompositeWitness& w) {
  std::string out =
      "function,witness_n,value,factorization,provenance,base_index,prime\n";
  out += function_text;
  out += ',';
  out += w.index.get_str();
  out += ',';
  out += w.value.get_str();
  out += ',';
  out += factorization_text(w.factorization);
  out += ',';
  out += provenance_to_string(w.provenance);
  out += ',';
  if (w.base_index) out += w.base_index->get_str();
  out += ',';
  if (w.prime) out += w.prime->get_str();
  out += '\n';
  return out;
}

Json witness_json(const std::string& function_text, const CompositeWitness& w) {
  Json obj;
  obj["function"] = function_text;
  obj["witness_n"] = w.index.get_str();
  obj["value"] = w.value.get_str();
  obj["factorization"] = factorization_text(w.factorization);
  obj["provenance"] = provenance_to_string(w.provenance);
  obj["base_index"] = w.base_index ? Json(w.base_index->get_str()) : Json(nullptr);
  obj["prime"] = w.prime ? Json(w.prime->get_str()) : Json(nullptr);
  return obj;
}

std::string witness_table(const std::string& function_text,
                          const CompositeWitness& w) {
  std::ostringstream out;
  out << function_text << ": composite at n = " << w.index.get_str()
      << ", value " << w.value.get_str();
  std::string factors = factorization_text(w.factorization);
  if (!factors.empty()) out << " = " << factors;
  if (w.value == 1) out << " (1 is not prime)";
  out << " [" << provenance_to_string(w.provenance);
  if (w.base_index && w.prime) {
    out << ": prime " << w.prime->get_str() << " divides f("
        << w.base_index->get_str() << ") and f(" << w.index.get_str() << ")";
  }
  out << "]\n";
  return out.str();
}

}  // namespace natfun
