#pragma once

// Batch classification over catalog groups: every choice of (R,S), every
// quotient surjection, and (for R = S = ∇) every square of quotients.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mgk/galois.hpp"
#include "mgk/groups.hpp"

namespace mgk {

struct SweepRow {
  std::string group;
  Partition r;
  Partition s;
  Partition kernel;
  MorphismClass kind = MorphismClass::morphism;
  std::optional<bool> trivial;
  std::optional<bool> central;
  std::optional<bool> normal;
  std::optional<Partition> certificate;

  bool skipped() const { return kind != MorphismClass::fibration; }
  bool agrees() const { return skipped() || central == normal; }
};

struct SweepSquareRow {
  std::string group;
  Partition t1;
  Partition t2;
  bool double_extension = false;
  std::optional<bool> double_central;
  std::optional<Partition> kernels_commutator;
  std::optional<Partition> meet_commutator;
};

struct SweepSummary {
  std::size_t rows = 0;
  std::size_t fibrations = 0;
  std::size_t skipped = 0;
  std::size_t trivial = 0;
  std::size_t central = 0;
  std::size_t normal = 0;
  std::size_t disagreements = 0;
  std::size_t squares = 0;
  std::size_t double_extensions = 0;
  std::size_t double_central = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<SweepSquareRow> squares;
  SweepSummary summary;
};

enum class SweepRelations { all, nabla };

inline SweepTable enumerate_and_classify(std::vector<std::string> const& names,
                                         SweepRelations relations = SweepRelations::all,
                                         Limits const& limits = {}) {
  SweepTable table;
  for (auto const& name : names) {
    auto g = share(catalog_group(name));
    if (g->size > limits.oracle_max) {
      throw BoundError("sweep: " + name + " has order " + std::to_string(g->size)
                       + ", above the oracle bound " + std::to_string(limits.oracle_max));
    }
    auto lattice = congruence_lattice(*g, limits);
    std::vector<std::pair<Partition, Partition>> choices;
    if (relations == SweepRelations::nabla) {
      choices.emplace_back(Partition::total(g->size), Partition::total(g->size));
    } else {
      for (auto const& r : lattice) {
        for (auto const& s : lattice) {
          choices.emplace_back(r, s);
        }
      }
    }
    for (auto const& [r, s] : choices) {
      TwoEqObject o{g, r, s};
      for (auto const& t : lattice) {
        auto m = quotient_morphism(o, t);
        SweepRow row{name, r, s, t};
        row.kind = classify_morphism(m).kind;
        if (row.kind != MorphismClass::morphism) {
          row.trivial = is_trivial_extension(m, limits).trivial;
        }
        if (row.kind == MorphismClass::fibration) {
          auto c = is_central_extension(m, limits);
          row.central = c.central;
          row.certificate = c.certificate;
          row.normal = is_normal_extension_oracle(m, limits).normal;
        }
        auto& sm = table.summary;
        ++sm.rows;
        sm.fibrations += !row.skipped();
        sm.skipped += row.skipped();
        sm.trivial += row.trivial.value_or(false);
        sm.central += row.central.value_or(false);
        sm.normal += row.normal.value_or(false);
        sm.disagreements += !row.agrees();
        table.rows.push_back(std::move(row));
      }
    }
    auto o = nabla_object(g);
    for (auto const& t1 : lattice) {
      for (auto const& t2 : lattice) {
        auto sq = quotient_square(o, t1, t2);
        SweepSquareRow row{name, t1, t2};
        auto de = is_double_extension(sq);
        row.double_extension = de.double_extension;
        if (de.double_extension && de.fibrations) {
          auto dc = is_double_central(sq, limits);
          row.double_central = dc.double_central;
          row.kernels_commutator = dc.kernels_commutator;
          row.meet_commutator = dc.meet_commutator;
        }
        auto& sm = table.summary;
        ++sm.squares;
        sm.double_extensions += row.double_extension;
        sm.double_central += row.double_central.value_or(false);
        table.squares.push_back(std::move(row));
      }
    }
  }
  return table;
}

}  // namespace mgk
