// Copyright 2026 The histner Authors.
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

#include <cstdio>
#include <ostream>

#include "histner/metrics.h"

namespace histner {

using nlohmann::ordered_json;

ordered_json ToJson(const Prf &prf) {
  ordered_json j;
  j["precision"] = prf.precision;
  j["recall"] = prf.recall;
  j["f1"] = prf.f1;
  j["tp"] = prf.tp;
  j["fp"] = prf.fp;
  j["fn"] = prf.fn;
  return j;
}

ordered_json ToJson(const StrictF1Report &report) {
  ordered_json j;
  j["overall"] = ToJson(report.overall);
  ordered_json per_label = ordered_json::object();
  for (EntityLabel l : kAllLabels) {
    per_label[std::string(LabelName(l))] = ToJson(report.per_label[Index(l)]);
  }
  j["per_label"] = per_label;
  return j;
}

namespace {

ordered_json ScoresJson(const AgreementScores &s) {
  ordered_json j;
  j["kappa"] = s.kappa;
  j["f1"] = ToJson(s.f1);
  return j;
}

}  // namespace

ordered_json ToJson(const AgreementReport &report) {
  ordered_json j;
  j["overall"] = ScoresJson(report.overall);
  ordered_json per_label = ordered_json::object();
  for (EntityLabel l : kAllLabels) {
    per_label[std::string(LabelName(l))] = ScoresJson(report.per_label[Index(l)]);
  }
  j["per_label"] = per_label;
  ordered_json per_region = ordered_json::object();
  for (Region r : kAllRegions) {
    if (report.per_region[Index(r)]) {
      per_region[std::string(RegionName(r))] = ScoresJson(*report.per_region[Index(r)]);
    }
  }
  j["per_region"] = per_region;
  return j;
}

void PrintAgreement(const AgreementReport &report, std::ostream &out) {
  char buf[128];
  auto row = [&](std::string_view name, const AgreementScores &s) {
    std::snprintf(buf, sizeof(buf), "%-14.*s %8.1f %8.1f\n",
                  static_cast<int>(name.size()), name.data(), 100.0 * s.kappa,
                  100.0 * s.f1.f1);
    out << buf;
  };
  std::snprintf(buf, sizeof(buf), "%-14s %8s %8s\n", "Region", "CK", "F1");
  out << buf;
  for (Region r : kAllRegions) {
    if (report.per_region[Index(r)]) row(RegionName(r), *report.per_region[Index(r)]);
  }
  row("Total", report.overall);
  out << '\n';
  std::snprintf(buf, sizeof(buf), "%-14s %8s %8s\n", "Entity", "CK", "F1");
  out << buf;
  for (EntityLabel l : kAllLabels) row(LabelName(l), report.per_label[Index(l)]);
}

}  // namespace histner
