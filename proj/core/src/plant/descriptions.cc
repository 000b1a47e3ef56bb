// Copyright 2026 The cpms Authors
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

#include "cpms/plant/descriptions.h"

#include <algorithm>
#include <cctype>

#include "cpms/plant/objects.h"

namespace cpms::plant {
namespace {

using semantic::Graph;
using semantic::Term;
namespace vocab = semantic::vocab;

Graph WithPrefixes(const std::string& local) {
  Graph g;
  g.SetPrefix("local", local);
  g.SetPrefix("lps", std::string(vocab::kLps));
  g.SetPrefix("rdf", std::string(vocab::kRdf));
  g.SetPrefix("rdfs", std::string(vocab::kRdfs));
  g.SetPrefix("xsd", std::string(vocab::kXsd));
  g.SetPrefix("dbpedia", std::string(vocab::kDbpedia));
  return g;
}

Term Type() { return Term::Iri(vocab::Rdf("type")); }
Term Lps(const char* local) { return Term::Iri(vocab::Lps(local)); }

void AddService(Graph& g, const Term& node, const std::string& label, const std::string& path) {
  g.Insert(node, Type(), Lps("Service"));
  g.Insert(node, Term::Iri(vocab::Rdfs("label")), Term::LangLiteral(label, "en"));
  g.Insert(node, Lps("hasOperation"), Term::Literal(path));
}

std::string OperationPath(int object_id, int resource_id) {
  return "/" + std::to_string(object_id) + "/0/" + std::to_string(resource_id);
}

}  // namespace

std::string LocalNamespace(const std::string& unit_id) {
  std::string lower = unit_id;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return "http://" + lower + ".plant.local/";
}

Graph DescribeSilo(const SiloSpec& silo, const PlantConfig& plant) {
  const std::string ns = LocalNamespace(silo.id);
  auto local = [&](const char* name) { return Term::Iri(ns + name); };
  Graph g = WithPrefixes(ns);

  g.Insert(local("silo"), Type(), Lps("Silo"));
  g.Insert(local("silo"), Lps("hasCapacity"), Term::Double(silo.capacity_liters));

  Term material = local("material");
  g.Insert(material, Type(), Lps("AllowedMaterial"));
  g.Insert(material, Lps("hasMaterialType"), Term::Iri(vocab::Dbpedia("Liquid")));

  for (Service service : silo.services) {
    std::string label(ServiceName(service));
    switch (service) {
      case Service::kHeat: {
        Term unit = local("unit"), max_temp = local("maxTemp"), heat = local("heat");
        g.Insert(unit, Type(), Lps("AllowedUnit"));
        g.Insert(unit, Lps("hasUnitType"), Term::Iri(vocab::Dbpedia("Celsius")));
        g.Insert(max_temp, Type(), Lps("MaxTemperature"));
        g.Insert(max_temp, Lps("hasValue"), Term::Double(silo.heat_max_c));
        g.Insert(max_temp, Lps("hasUnit"), unit);
        AddService(g, heat, label, OperationPath(kSiloObject, silo_res::kHeat));
        g.Insert(heat, Lps("QoS"), unit);
        g.Insert(heat, Lps("QoS"), max_temp);
        g.Insert(heat, Lps("QoS"), material);
        break;
      }
      case Service::kFill: {
        Term fill = local("fill");
        AddService(g, fill, label, OperationPath(kSiloObject, silo_res::kFill));
        g.Insert(fill, Lps("QoS"), material);
        for (const auto& [ingredient, source] : plant.ingredient_sources) {
          if (source == silo.id) g.Insert(fill, Lps("hasIngredient"), Term::Literal(ingredient));
        }
        break;
      }
      case Service::kMix: {
        Term mix = local("mix");
        AddService(g, mix, label, OperationPath(kSiloObject, silo_res::kMix));
        g.Insert(mix, Lps("QoS"), material);
        g.Insert(mix, Lps("minDuration"), Term::Double(silo.mix_min_s));
        break;
      }
      case Service::kEmpty: {
        Term empty = local("empty");
        AddService(g, empty, label, OperationPath(kSiloObject, silo_res::kEmpty));
        g.Insert(empty, Lps("QoS"), material);
        if (plant.delivery_silo == silo.id) {
          g.Insert(empty, Lps("deliveryPoint"), Term::Literal("true", vocab::Xsd("boolean")));
        }
        break;
      }
    }
  }
  return g;
}

Graph DescribePipe(const PipeSpec& pipe) {
  const std::string ns = LocalNamespace(pipe.id);
  Graph g = WithPrefixes(ns);
  Term transfer = Term::Iri(ns + "transfer");
  AddService(g, transfer, "Transfer", OperationPath(kPipeObject, pipe_res::kTransfer));
  g.Insert(transfer, Lps("fromSilo"), Term::Literal(pipe.from_silo));
  g.Insert(transfer, Lps("toSilo"), Term::Literal(pipe.to_silo));
  g.Insert(transfer, Lps("transferRate"), Term::Double(pipe.transfer_rate_pct_per_s));
  return g;
}

}  // namespace cpms::plant
