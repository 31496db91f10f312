// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "conductor/core/decimal.hpp"
#include "conductor/core/types.hpp"

namespace conductor::backend {

/// Blended USD rate per 1000 tokens, per model.
class PriceTable {
 public:
  PriceTable() = default;

  /// gpt-3.5-turbo at 0.002 and gpt-4 at 0.03.
  static PriceTable defaults();
  /// {"model": "0.002", ...}; numbers are accepted but strings keep exact
  /// decimals. Throws SchemaViolation or InvalidArgument on non-positive rates.
  static PriceTable from_json(std::string_view text);
  static PriceTable load(const std::filesystem::path& path);

  /// Throws InvalidArgument unless rate > 0.
  void set(std::string model_id, Usd rate_per_1k);
  /// Throws UnpricedModel.
  const Usd& rate(std::string_view model_id) const;
  bool contains(std::string_view model_id) const;
  const std::map<std::string, Usd, std::less<>>& rates() const { return rates_; }

 private:
  std::map<std::string, Usd, std::less<>> rates_;
};

/// Sum of total tokens / 1000 x rate, exact, rounded half-even to 6
/// places. Throws UnpricedModel.
Usd compute_cost(std::span<const TokenUsage> usages, const PriceTable& prices);

}  // namespace conductor::backend
