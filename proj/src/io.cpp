// Copyright 2026 The chanres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chanres/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "chanres/error.hpp"
#include "json.hpp"

namespace chanres::io {

namespace {

using nlohmann::json;

std::size_t positive_int_field(const json& doc, const char* name) {
  if (!doc.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  const json& v = doc.at(name);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ParseError(std::string("field '") + name + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Index whose removal leaves sum K^dagger K closest to the identity; the
// operator most responsible for a trace-preservation failure.
std::size_t worst_kraus_index(const std::vector<ComplexMatrix>& ops) {
  const std::size_t din = ops.front().cols();
  std::vector<ComplexMatrix> grams;
  ComplexMatrix total(din, din);
  for (const ComplexMatrix& k : ops) {
    grams.push_back(adjoint_mul(k, k));
    total += grams.back();
  }
  const ComplexMatrix id = ComplexMatrix::identity(din);
  std::size_t worst = 0;
  double best_err = max_abs_diff(total - grams[0], id);
  for (std::size_t k = 1; k < ops.size(); ++k) {
    const double err = max_abs_diff(total - grams[k], id);
    if (err < best_err) {
      best_err = err;
      worst = k;
    }
  }
  return worst;
}

}  // namespace

QChannel parse_channel_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("channel file must hold a JSON object");
  const std::size_t din = positive_int_field(doc, "dim_in");
  const std::size_t dout = positive_int_field(doc, "dim_out");
  if (!doc.contains("kraus") || !doc.at("kraus").is_array() || doc.at("kraus").empty()) {
    throw ParseError("field 'kraus' must be a nonempty array");
  }
  std::vector<ComplexMatrix> ops;
  const json& kraus = doc.at("kraus");
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    const std::string where = "kraus[" + std::to_string(k) + "]";
    const json& m = kraus[k];
    if (!m.is_array() || m.size() != dout) {
      throw ParseError(where + " must be an array of " + std::to_string(dout) + " rows");
    }
    ComplexMatrix op(dout, din);
    for (std::size_t r = 0; r < dout; ++r) {
      const json& row = m[r];
      if (!row.is_array() || row.size() != din) {
        throw ParseError(where + "[" + std::to_string(r) + "] must hold " + std::to_string(din) + " entries");
      }
      for (std::size_t c = 0; c < din; ++c) {
        const json& z = row[c];
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
          throw ParseError(where + "[" + std::to_string(r) + "][" + std::to_string(c) +
                           "] must be a [re, im] pair of numbers");
        }
        op(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
      }
    }
    ops.push_back(std::move(op));
  }
  try {
    return QChannel::from_kraus(ops);
  } catch (const ValidationError& e) {
    throw ValidationError("kraus[" + std::to_string(worst_kraus_index(ops)) + "]: " + e.what());
  }
}

QChannel load_channel_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open channel file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_channel_json(ss.str());
}

std::string channel_to_json(const QChannel& n) {
  json kraus = json::array();
  for (const ComplexMatrix& k : n.kraus()) {
    json rows = json::array();
    for (std::size_t r = 0; r < k.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < k.cols(); ++c) row.push_back({k(r, c).real(), k(r, c).imag()});
      rows.push_back(std::move(row));
    }
    kraus.push_back(std::move(rows));
  }
  json doc = {{"dim_in", n.dim_in()}, {"dim_out", n.dim_out()}, {"kraus", std::move(kraus)}};
  return doc.dump(2) + "\n";
}

void save_channel_json(const QChannel& n, const std::string& path) { write_file_atomic(path, channel_to_json(n)); }

std::string report_to_json(const monotones::MonotoneReport& r) {
  // Hand-assembled so every number carries exactly six decimals and the
  // byte stream is stable across runs.
  std::ostringstream os;
  os << "{\n";
  os << "  \"c_r_i\": " << fixed(r.c_r_i, 6) << ",\n";
  os << "  \"c_r_b_lower\": " << fixed(r.c_r_b_lower, 6) << ",\n";
  os << "  \"c_max\": " << fixed(r.c_max, 6) << ",\n";
  os << "  \"distill_parallel\": " << fixed(r.distill_parallel, 6) << ",\n";
  os << "  \"distill_iterative_lower\": " << fixed(r.distill_iterative_lower, 6) << ",\n";
  os << "  \"dilute_interval\": [" << fixed(r.dilute_interval.first, 6) << ", " << fixed(r.dilute_interval.second, 6)
     << "],\n";
  os << "  \"irreversibility_gap_lower\": " << fixed(r.irreversibility_gap_lower, 6) << ",\n";
  os << "  \"c_max_smoothing\": \"none (single copy, epsilon = 0)\",\n";
  os << "  \"search_config\": {\n";
  os << "    \"ancilla_dim\": " << r.config.ancilla_dim << ",\n";
  os << "    \"restarts\": " << r.config.restarts << ",\n";
  os << "    \"max_ascent_steps\": " << r.config.max_ascent_steps << ",\n";
  os << "    \"step_tolerance\": " << json(r.config.step_tolerance).dump() << ",\n";
  os << "    \"rng_seed\": " << r.config.rng_seed << "\n";
  os << "  },\n";
  os << "  \"c_r_b_witness\": [";
  const ComplexMatrix& w = r.c_r_b_witness.matrix();
  for (std::size_t i = 0; i < w.rows(); ++i) {
    os << (i ? ", " : "") << "[";
    for (std::size_t j = 0; j < w.cols(); ++j)
      os << (j ? ", " : "") << "[" << fixed(w(i, j).real(), 10) << ", " << fixed(w(i, j).imag(), 10) << "]";
    os << "]";
  }
  os << "]\n}\n";
  return os.str();
}

std::string report_to_text(const monotones::MonotoneReport& r) {
  std::ostringstream os;
  os << "c_r_i: " << fixed(r.c_r_i, 6) << "\n";
  os << "c_r_b_lower: " << fixed(r.c_r_b_lower, 6) << "\n";
  os << "c_max: " << fixed(r.c_max, 6) << "\n";
  os << "distill_parallel: " << fixed(r.distill_parallel, 6) << "\n";
  os << "distill_iterative_lower: " << fixed(r.distill_iterative_lower, 6) << "\n";
  os << "dilute_interval: [" << fixed(r.dilute_interval.first, 6) << ", " << fixed(r.dilute_interval.second, 6)
     << "]\n";
  os << "irreversibility_gap_lower: " << fixed(r.irreversibility_gap_lower, 6) << "\n";
  os << "ancilla_dim: " << r.config.ancilla_dim << "\n";
  os << "restarts: " << r.config.restarts << "\n";
  os << "seed: " << r.config.rng_seed << "\n";
  return os.str();
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  const std::string tmp = path + ".partial";
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  std::error_code ec;
  if (out) std::filesystem::rename(tmp, path, ec);
  if (!out || ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write '" + path + "'");
  }
}

}  // namespace chanres::io
