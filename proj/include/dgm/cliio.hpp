#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgm/cdga.hpp"
#include "dgm/dgmodule.hpp"
#include "dgm/plforms.hpp"

namespace dgm {

/* Expression parsing over a fixed generator scope.  The grammar has rational
   literals (3, -3, 3/4), named generators, parentheses, and the operators
   + - * ^; juxtaposition is not multiplication and is rejected.  Errors are
   std::invalid_argument carrying 1-based column positions. */
AlgElement parse_algebra_element(const SemifreeCdga& a, const std::string& text);

/* Module expressions additionally admit module generator names.  A module
   generator must be the rightmost named factor of each product: algebra
   elements act from the left, and only plain rational scalars may follow. */
ModElement parse_module_element(const SemifreeModule& m, const std::string& text);

/* Form expressions name the barycentric coordinates t0..tn (also spelled
   t_0..t_n) and their differentials dt0..dtn; products are wedge products. */
PolyForm parse_form(int simplex_dim, const std::string& text);

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* A parsed and fully validated model file: named algebras, semifree modules
   over them, and numeric module tables.  Order vectors preserve file order
   for canonical re-serialization. */
struct ParsedModel {
    std::vector<std::string> algebra_order;
    std::map<std::string, SemifreeCdga> algebras;
    std::vector<std::string> module_order;
    std::map<std::string, SemifreeModule> modules;
    std::map<std::string, std::string> module_base;  /* module name -> algebra name */
    std::vector<std::string> table_order;
    std::map<std::string, ModuleTable> tables;
    std::map<std::string, std::string> table_base;   /* table name -> algebra name */
};

/* Throws ModelError with a named diagnostic on any structural, parse, or
   validation failure; a returned model is always fully valid. */
ParsedModel parse_model_text(const std::string& text);
ParsedModel parse_model_file(const std::string& path);

/* Canonical serialization: parsing the output reproduces the model
   structurally, and serializing again is byte-identical. */
std::string serialize_model(const ParsedModel& m);

/* One command run.  Exit codes: 0 complete, 1 error, 2 computed but flagged
   incomplete (capped or edge-limited). */
struct RunResult {
    int exit_code = 0;
    std::string json;   /* machine-readable report */
    std::string human;  /* terminal rendering of the same report */
};

/* args = argv[1:].  Pure: never prints, never exits. */
RunResult dispatch(const std::vector<std::string>& args);

}  // namespace dgm
