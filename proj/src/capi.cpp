#include "hurwitz.h"

#include <cstring>
#include <new>
#include <string>

#include "census.hpp"
#include "classifier.hpp"
#include "datum.hpp"
#include "dessin.hpp"
#include "moves.hpp"
#include "oracle.hpp"

using namespace hurwitz;

struct hz_datum {
  BranchDatum value;
};
struct hz_witness {
  Witness value;
};
struct hz_census {
  CensusResult value;
};

namespace {

hz_status status_of(errc code) {
  switch (code) {
    case errc::syntax: return HZ_ERR_SYNTAX;
    case errc::degree_mismatch: return HZ_ERR_DEGREE_MISMATCH;
    case errc::riemann_hurwitz: return HZ_ERR_RIEMANN_HURWITZ;
    case errc::degenerate: return HZ_ERR_DEGENERATE;
    case errc::parity: return HZ_ERR_PARITY;
    case errc::negative_genus: return HZ_ERR_NEGATIVE_GENUS;
    case errc::unsupported_base: return HZ_ERR_UNSUPPORTED_BASE;
    case errc::unsupported_degree: return HZ_ERR_UNSUPPORTED_DEGREE;
    case errc::precondition: return HZ_ERR_PRECONDITION;
    case errc::not_connected: return HZ_ERR_NOT_CONNECTED;
    case errc::bad_argument: return HZ_ERR_BAD_ARGUMENT;
    case errc::internal: return HZ_ERR_INTERNAL;
  }
  return HZ_ERR_INTERNAL;
}

void put_error(char* err, size_t err_len, const char* what) {
  if (err == nullptr || err_len == 0) return;
  std::strncpy(err, what, err_len - 1);
  err[err_len - 1] = '\0';
}

char* copy_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SearchBudget to_budget(const hz_budget* budget) {
  if (budget == nullptr) return {};
  return {budget->max_nodes, budget->max_seconds};
}

template <class Fn>
hz_status guarded(char* err, size_t err_len, Fn&& fn) {
  try {
    return fn();
  } catch (const error& e) {
    put_error(err, err_len, e.what());
    return status_of(e.code());
  } catch (const std::exception& e) {
    put_error(err, err_len, e.what());
    return HZ_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* hz_version(void) { return "1.0.0"; }

const char* hz_status_name(hz_status status) {
  switch (status) {
    case HZ_OK: return "ok";
    case HZ_NOT_REALIZABLE: return "not-realizable";
    case HZ_BUDGET_EXCEEDED: return "budget-exceeded";
    case HZ_ERR_SYNTAX: return "syntax-error";
    case HZ_ERR_DEGREE_MISMATCH: return "degree-mismatch";
    case HZ_ERR_RIEMANN_HURWITZ: return "riemann-hurwitz-violation";
    case HZ_ERR_DEGENERATE: return "degenerate";
    case HZ_ERR_PARITY: return "parity-violation";
    case HZ_ERR_NEGATIVE_GENUS: return "negative-genus";
    case HZ_ERR_UNSUPPORTED_BASE: return "unsupported-base";
    case HZ_ERR_UNSUPPORTED_DEGREE: return "unsupported-degree";
    case HZ_ERR_PRECONDITION: return "precondition-failed";
    case HZ_ERR_NOT_CONNECTED: return "not-connected";
    case HZ_ERR_BAD_ARGUMENT: return "bad-argument";
    case HZ_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

void hz_string_free(char* str) { delete[] str; }

hz_status hz_datum_parse(const char* line, hz_datum** out, char* err, size_t err_len) {
  if (line == nullptr || out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  return guarded(err, err_len, [&] {
    *out = new hz_datum{parse_datum(line)};
    return HZ_OK;
  });
}

void hz_datum_free(hz_datum* datum) { delete datum; }

hz_status hz_datum_format(const hz_datum* datum, char** line_out) {
  if (datum == nullptr || line_out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  *line_out = copy_string(datum->value.to_line());
  return *line_out != nullptr ? HZ_OK : HZ_ERR_INTERNAL;
}

int hz_datum_degree(const hz_datum* datum) { return datum != nullptr ? datum->value.degree() : 0; }
int hz_datum_cover_genus(const hz_datum* datum) {
  return datum != nullptr ? datum->value.cover_genus() : 0;
}
int hz_datum_base_genus(const hz_datum* datum) {
  return datum != nullptr ? datum->value.base().genus : 0;
}
int hz_datum_num_partitions(const hz_datum* datum) {
  return datum != nullptr ? datum->value.num_partitions() : 0;
}

hz_status hz_classify(const hz_datum* datum, const hz_budget* oracle_fallback, int jobs,
                      char** json_out) {
  if (datum == nullptr || json_out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  return guarded(nullptr, 0, [&] {
    std::optional<SearchBudget> fallback;
    if (oracle_fallback != nullptr) fallback = to_budget(oracle_fallback);
    Verdict v = classify(datum->value, fallback, jobs);
    *json_out = copy_string(verdict_to_json(datum->value, v));
    return *json_out != nullptr ? HZ_OK : HZ_ERR_INTERNAL;
  });
}

hz_status hz_realize(const hz_datum* datum, const hz_budget* budget, int jobs,
                     hz_witness** witness_out) {
  if (datum == nullptr) return HZ_ERR_BAD_ARGUMENT;
  return guarded(nullptr, 0, [&] {
    RealizeOutcome outcome = realize(datum->value, to_budget(budget), jobs);
    switch (outcome.kind) {
      case Realizability::found:
        if (witness_out != nullptr) *witness_out = new hz_witness{std::move(*outcome.witness)};
        return HZ_OK;
      case Realizability::not_realizable: return HZ_NOT_REALIZABLE;
      default: return HZ_BUDGET_EXCEEDED;
    }
  });
}

void hz_witness_free(hz_witness* witness) { delete witness; }

hz_status hz_witness_text(const hz_witness* witness, char** text_out) {
  if (witness == nullptr || text_out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  *text_out = copy_string(witness->value.to_text());
  return *text_out != nullptr ? HZ_OK : HZ_ERR_INTERNAL;
}

hz_status hz_witness_json(const hz_witness* witness, char** json_out) {
  if (witness == nullptr || json_out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  *json_out = copy_string(witness->value.to_json());
  return *json_out != nullptr ? HZ_OK : HZ_ERR_INTERNAL;
}

hz_status hz_witness_parse(const char* text, int degree_hint, hz_witness** out, char* err,
                           size_t err_len) {
  if (text == nullptr || out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  return guarded(err, err_len, [&] {
    std::string_view view(text);
    size_t first = view.find_first_not_of(" \t\r\n");
    Witness w = (first != std::string_view::npos && view[first] == '{')
                    ? Witness::from_json(view)
                    : Witness::from_text(view, degree_hint);
    *out = new hz_witness{std::move(w)};
    return HZ_OK;
  });
}

hz_status hz_verify_witness(const hz_datum* datum, const hz_witness* witness, int* ok_out) {
  if (datum == nullptr || witness == nullptr || ok_out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  return guarded(nullptr, 0, [&] {
    *ok_out = verify_witness(datum->value, witness->value) ? 1 : 0;
    return HZ_OK;
  });
}

hz_status hz_dessin_from_witness(const hz_witness* witness, int as_json, char** out) {
  if (witness == nullptr || out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  return guarded(nullptr, 0, [&] {
    if (witness->value.theta.size() < 2) {
      fail(errc::bad_argument, "a dessin needs at least two permutations");
    }
    Dessin dessin = dessin_from_pair(witness->value.theta[0], witness->value.theta[1]);
    BranchDatum datum = dessin_to_datum(dessin);
    std::string text;
    if (as_json != 0) {
      text = std::string("{\"dessin\":\"") + dessin.to_string() +
             "\",\"faces\":\"" + dessin.face_lengths().to_string() +
             "\",\"genus\":" + std::to_string(dessin.genus()) +
             ",\"datum\":\"" + datum.to_line() + "\"}";
    } else {
      text = dessin.to_string() + "\nfaces=" + dessin.face_lengths().to_string() +
             "\ngenus=" + std::to_string(dessin.genus()) + "\ndatum: " + datum.to_line() + "\n";
    }
    *out = copy_string(text);
    return *out != nullptr ? HZ_OK : HZ_ERR_INTERNAL;
  });
}

hz_status hz_move_apply(const hz_datum* datum, const char* spec, char** target_line_out,
                        char** witness_fragment_out, char* err, size_t err_len) {
  if (datum == nullptr || spec == nullptr || target_line_out == nullptr) {
    return HZ_ERR_BAD_ARGUMENT;
  }
  return guarded(err, err_len, [&] {
    MoveApplication app = apply_move_spec(datum->value, spec);
    *target_line_out = copy_string(app.target.to_line());
    if (witness_fragment_out != nullptr) {
      std::string fragment;
      if (app.witness_fragment) {
        fragment = "theta1=" + app.witness_fragment->first.to_cycles() +
                   "\ntheta2=" + app.witness_fragment->second.to_cycles() + "\n";
      }
      *witness_fragment_out = copy_string(fragment);
    }
    return HZ_OK;
  });
}

hz_status hz_census_run(const hz_census_opts* opts, hz_census** out, char* err, size_t err_len) {
  if (opts == nullptr || out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  return guarded(err, err_len, [&] {
    CensusQuery query;
    query.degree = opts->degree;
    query.branch_points = opts->branch_points;
    query.require_length2 = opts->require_length2 != 0;
    query.genus_min = opts->genus_min;
    query.genus_max = opts->genus_max;
    query.per_datum = {opts->per_datum.max_nodes, opts->per_datum.max_seconds};
    query.total_seconds = opts->total_seconds;
    query.jobs = opts->jobs;
    *out = new hz_census{exceptional_census(query)};
    return HZ_OK;
  });
}

void hz_census_free(hz_census* census) { delete census; }

hz_status hz_census_text(const hz_census* census, char** out) {
  if (census == nullptr || out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  *out = copy_string(census->value.to_text());
  return *out != nullptr ? HZ_OK : HZ_ERR_INTERNAL;
}

hz_status hz_census_json(const hz_census* census, char** out) {
  if (census == nullptr || out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  *out = copy_string(census->value.to_json());
  return *out != nullptr ? HZ_OK : HZ_ERR_INTERNAL;
}

uint64_t hz_census_candidates(const hz_census* census) {
  return census != nullptr ? census->value.candidates : 0;
}
uint64_t hz_census_realizable(const hz_census* census) {
  return census != nullptr ? census->value.realizable : 0;
}
uint64_t hz_census_exceptional(const hz_census* census) {
  return census != nullptr ? census->value.exceptional : 0;
}
uint64_t hz_census_unknown(const hz_census* census) {
  return census != nullptr ? census->value.unknown : 0;
}
uint64_t hz_census_mismatches(const hz_census* census) {
  return census != nullptr ? census->value.mismatches.size() : 0;
}

hz_status hz_prime_degree_check(int degree, int branch_points, const hz_budget* per_datum,
                                int jobs, int* holds_out) {
  if (holds_out == nullptr) return HZ_ERR_BAD_ARGUMENT;
  return guarded(nullptr, 0, [&] {
    *holds_out = prime_degree_check(degree, branch_points, to_budget(per_datum), jobs) ? 1 : 0;
    return HZ_OK;
  });
}

}  // extern "C"
