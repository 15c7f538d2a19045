#pragma once

#include <string>

#include "reactid/config.hpp"

namespace reactid {

/// The three command-line pipelines. Each validates its inputs before
/// touching the output directory (a bad config writes nothing), prints a
/// short summary to stdout on success, and on failure writes one line to
/// stderr naming the failing stage and returns nonzero.

/// Direct problem with the configured reaction coefficient (zero if absent):
/// writes final_field.csv, summary.txt, optional snapshots and VTK.
int cmd_forward(const RunConfig& cfg);

/// Final-time observation data from the configured true coefficient:
/// writes psi.csv (and optional VTK). Fails when coefficients.reaction is
/// absent.
int cmd_generate_data(const RunConfig& cfg);

/// Iterative reconstruction of the reaction coefficient from a data file:
/// writes coefficient iterates c_000.csv..c_KKK.csv, convergence.csv,
/// summary.txt, optional VTK of the final iterate.
int cmd_identify(const RunConfig& cfg, const std::string& psi_path);

}  // namespace reactid
