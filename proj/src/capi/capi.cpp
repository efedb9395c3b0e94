#include "malt/malt.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "malt/algebra.hpp"
#include "malt/clone.hpp"
#include "malt/congruence.hpp"
#include "malt/error.hpp"
#include "malt/parallel.hpp"
#include "malt/report.hpp"
#include "malt/sequence.hpp"
#include "malt/suites.hpp"

struct malt_algebra {
  malt::FiniteAlgebra algebra;
};

namespace {

thread_local std::string last_error;

malt_status status_of(malt::ErrorKind kind) {
  switch (kind) {
    case malt::ErrorKind::Parse: return MALT_ERR_PARSE;
    case malt::ErrorKind::Validation: return MALT_ERR_VALIDATION;
    case malt::ErrorKind::Budget: return MALT_ERR_BUDGET;
    case malt::ErrorKind::Argument: return MALT_ERR_ARGUMENT;
    case malt::ErrorKind::Io: return MALT_ERR_IO;
  }
  return MALT_ERR_INTERNAL;
}

// Runs fn, mapping exceptions to status codes and recording the message.
template <class Fn>
int guarded(Fn&& fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const malt::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return MALT_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MALT_ERR_BUDGET;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MALT_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return MALT_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw malt::ArgumentError(std::string(what) + " must not be null");
}

malt::SequenceKind kind_of(malt_kind k) {
  switch (k) {
    case MALT_KIND_JONSSON: return malt::SequenceKind::Jonsson;
    case MALT_KIND_ALVIN: return malt::SequenceKind::Alvin;
    case MALT_KIND_GUMM: return malt::SequenceKind::Gumm;
    case MALT_KIND_DAY: return malt::SequenceKind::Day;
  }
  throw malt::ArgumentError("unknown sequence kind");
}

}  // namespace

extern "C" {

const char* malt_version(void) { return "1.0.0"; }

const char* malt_status_name(int status) {
  switch (status) {
    case MALT_OK: return "ok";
    case MALT_FAIL: return "fail";
    case MALT_INCONCLUSIVE: return "inconclusive";
    case MALT_ERR_PARSE: return "parse error";
    case MALT_ERR_VALIDATION: return "validation error";
    case MALT_ERR_IO: return "i/o error";
    case MALT_ERR_BUDGET: return "budget exceeded";
    case MALT_ERR_ARGUMENT: return "invalid argument";
    case MALT_ERR_INTERNAL: return "internal error";
    default: return "unknown status";
  }
}

const char* malt_last_error(void) { return last_error.c_str(); }

void malt_set_threads(unsigned threads) { malt::set_thread_count(threads); }
unsigned malt_get_threads(void) { return malt::thread_count(); }

int malt_algebra_from_json(const char* text, malt_algebra** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new malt_algebra{malt::load_algebra(text)};
    return MALT_OK;
  });
}

int malt_algebra_from_file(const char* path, malt_algebra** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new malt_algebra{malt::load_algebra_file(path)};
    return MALT_OK;
  });
}

int malt_algebra_power(const malt_algebra* algebra, unsigned m,
                       malt_algebra** out) {
  return guarded([&] {
    require(algebra, "algebra");
    require(out, "out");
    *out = new malt_algebra{malt::direct_power(algebra->algebra, m)};
    return MALT_OK;
  });
}

void malt_algebra_release(malt_algebra* algebra) { delete algebra; }

int malt_algebra_size(const malt_algebra* algebra, size_t* out) {
  return guarded([&] {
    require(algebra, "algebra");
    require(out, "out");
    *out = algebra->algebra.size();
    return MALT_OK;
  });
}

int malt_algebra_to_json(const malt_algebra* algebra, char** out) {
  return guarded([&] {
    require(algebra, "algebra");
    require(out, "out");
    *out = copy_string(malt::algebra_to_json(algebra->algebra));
    return MALT_OK;
  });
}

int malt_info(const malt_algebra* algebra, char** report) {
  return guarded([&] {
    require(algebra, "algebra");
    require(report, "report");
    const auto& a = algebra->algebra;
    malt::Json j;
    j["name"] = a.name();
    j["size"] = a.size();
    malt::Json ops = malt::Json::array();
    for (const auto& s : a.signature().symbols()) {
      malt::Json e;
      e["name"] = s.name;
      e["arity"] = s.arity;
      ops.push_back(std::move(e));
    }
    j["operations"] = std::move(ops);
    const auto con = malt::all_congruences(a);
    j["congruences"] = con.size();
    j["congruence_modular"] = malt::is_modular(con);
    j["congruence_distributive"] = malt::is_distributive(con);
    j["tolerances"] = malt::all_tolerances(a).size();
    *report = copy_string(malt::dump(j));
    return MALT_OK;
  });
}

int malt_conlat(const malt_algebra* algebra, char** report) {
  return guarded([&] {
    require(algebra, "algebra");
    require(report, "report");
    const auto con = malt::all_congruences(algebra->algebra);
    *report = copy_string(malt::dump(malt::to_json(con)));
    return MALT_OK;
  });
}

void malt_level_options_init(malt_level_options* options) {
  if (!options) return;
  const malt::LevelOptions defaults;
  options->kind = MALT_KIND_ALVIN;
  options->cap_n = static_cast<unsigned>(defaults.cap_n);
  options->cap_clone = defaults.cap_clone;
  options->allow_large_day = 0;
}

int malt_level(const malt_algebra* algebra, const malt_level_options* options,
               char** report) {
  return guarded([&] {
    require(algebra, "algebra");
    require(options, "options");
    require(report, "report");
    malt::LevelOptions o;
    o.cap_n = options->cap_n;
    o.cap_clone = options->cap_clone;
    o.allow_large_day = options->allow_large_day != 0;
    const auto r = malt::level(algebra->algebra, kind_of(options->kind), o);
    *report = copy_string(malt::dump(malt::to_json(r)));
    return r.status == malt::LevelStatus::Found ? MALT_OK : MALT_INCONCLUSIVE;
  });
}

int malt_free_algebra(const malt_algebra* algebra, unsigned arity,
                      size_t cap_clone, char** algebra_json) {
  return guarded([&] {
    require(algebra, "algebra");
    require(algebra_json, "algebra_json");
    const auto free = malt::free_algebra(algebra->algebra, arity, cap_clone);
    *algebra_json = copy_string(
        malt::algebra_to_json(free.algebra, free.generators));
    return MALT_OK;
  });
}

void malt_star_options_init(malt_star_options* options) {
  if (!options) return;
  options->kind = MALT_KIND_GUMM;
  options->times = 1;
  options->check_tm = 0;
}

int malt_star(const malt_algebra* algebra, const char* sequence_json,
              const malt_star_options* options, char** report) {
  return guarded([&] {
    require(algebra, "algebra");
    require(sequence_json, "sequence_json");
    require(options, "options");
    require(report, "report");
    const auto kind = kind_of(options->kind);
    if (kind != malt::SequenceKind::Gumm && kind != malt::SequenceKind::Alvin) {
      throw malt::ArgumentError("star applies to gumm or alvin sequences");
    }
    const auto& a = algebra->algebra;
    const auto input =
        malt::parse_sequence(malt::Json::parse(sequence_json), a.size(), 3);
    malt::Json j;
    j["kind"] = std::string(malt::to_string(kind));
    j["times"] = options->times;
    const auto input_check = malt::check_sequence(a, input, kind);
    j["input_check"] = malt::to_json(input_check);
    if (!input_check.valid()) {
      *report = copy_string(malt::dump(j));
      last_error = "input is not a valid " +
                   std::string(malt::to_string(kind)) + " sequence";
      return MALT_ERR_VALIDATION;
    }
    auto output = input;
    for (unsigned i = 0; i < options->times; ++i) {
      output = malt::star_transform(a, output);
    }
    const auto output_check = malt::check_sequence(a, output, kind);
    j["output"] = malt::to_json(std::span<const malt::TermOperation>(output));
    j["output_check"] = malt::to_json(output_check);
    bool ok = output_check.valid();
    if (options->check_tm > 0 && output.size() > 1) {
      malt::ValidityReport tm;
      const auto tolerances = malt::all_tolerances(a);
      for (const auto& t : tolerances) {
        tm.merge(malt::check_tm(a, output[1], t, options->check_tm));
      }
      malt::Json t;
      t["m"] = options->check_tm;
      t["tolerances"] = tolerances.size();
      t["check"] = malt::to_json(tm);
      j["tm_check"] = std::move(t);
      ok = ok && tm.valid();
    }
    j["holds"] = ok;
    *report = copy_string(malt::dump(j));
    return ok ? MALT_OK : MALT_FAIL;
  });
}

int malt_verify(const malt_algebra* algebra, const char* suite,
                const char* params_json, char** report) {
  return guarded([&] {
    require(algebra, "algebra");
    require(suite, "suite");
    require(report, "report");
    malt::SuiteParams params;
    if (params_json) {
      params = malt::parse_suite_params(malt::Json::parse(params_json));
    }
    const auto r = malt::run_suite(algebra->algebra, suite, params);
    *report = copy_string(malt::dump(r.to_json()));
    switch (r.outcome()) {
      case malt::SuiteOutcome::Pass: return MALT_OK;
      case malt::SuiteOutcome::Fail: return MALT_FAIL;
      case malt::SuiteOutcome::Inconclusive: return MALT_INCONCLUSIVE;
    }
    return MALT_ERR_INTERNAL;
  });
}

void malt_string_release(char* text) { std::free(text); }

}  // extern "C"
