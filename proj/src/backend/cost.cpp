// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/backend/cost.hpp"

#include <fstream>
#include <sstream>

#include "conductor/core/errors.hpp"
#include "json.hpp"

namespace conductor::backend {

PriceTable PriceTable::defaults() {
  PriceTable t;
  t.set("gpt-3.5-turbo", Usd::parse("0.002"));
  t.set("gpt-4", Usd::parse("0.03"));
  return t;
}

PriceTable PriceTable::from_json(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, std::string("price table: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::SchemaViolation, "price table must be a JSON object");
  PriceTable t;
  for (const auto& [model, value] : j.items()) {
    if (value.is_string()) {
      t.set(model, Usd::parse(value.get<std::string>()));
    } else if (value.is_number()) {
      // The JSON text of the number is the decimal the user wrote.
      t.set(model, Usd::parse(value.dump()));
    } else {
      throw Error(ErrorKind::SchemaViolation, "price for '" + model + "' must be a string or number");
    }
  }
  return t;
}

PriceTable PriceTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open price table " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void PriceTable::set(std::string model_id, Usd rate_per_1k) {
  if (rate_per_1k <= Usd()) {
    throw Error(ErrorKind::InvalidArgument, "rate for '" + model_id + "' must be positive");
  }
  rates_.insert_or_assign(std::move(model_id), rate_per_1k);
}

const Usd& PriceTable::rate(std::string_view model_id) const {
  const auto it = rates_.find(model_id);
  if (it == rates_.end()) throw Error(ErrorKind::UnpricedModel, "no price for model '" + std::string(model_id) + "'");
  return it->second;
}

bool PriceTable::contains(std::string_view model_id) const { return rates_.find(model_id) != rates_.end(); }

Usd compute_cost(std::span<const TokenUsage> usages, const PriceTable& prices) {
  // tokens x rate is in units of femto-USD per 1000; divide once at the end.
  Int128 scaled = 0;
  for (const auto& u : usages) {
    scaled += static_cast<Int128>(u.total_tokens()) * prices.rate(u.model_id).femto();
  }
  Int128 q = scaled / 1000;
  const Int128 r = scaled % 1000;
  if (r * 2 > 1000 || (r * 2 == 1000 && q % 2 != 0)) ++q;
  return Usd::from_femto(q).rounded(6);
}

}  // namespace conductor::backend
