#pragma once

#include <string>

#include "tokmove/contract.hpp"
#include "tokmove/instance.hpp"
#include "tokmove/moves.hpp"
#include "tokmove/reductions.hpp"

namespace tokmove {

/*
 * Plain-text formats, one directive per line; blank lines and lines starting
 * with '#' are skipped.
 *
 * instance:   problem <UUTM|UDTM|LUTM|LDTM>
 *             vertices <n>
 *             edge <u> <v>          (arc u->v when directed)
 *             source <v1> ... <vk>
 *             target <v1> ... <vk>
 *             budget <ell>
 * sequence:   moves <m> followed by m lines
 *             move <label|-> <s> <t> : <v0> <v1> ... <vp>
 * rbds:       blue <nB> / red <nR> / edge <b> <r> lines / k <kD>
 * msi:        colors <c> / gvertex <v> <color> lines / gedge <u> <v> lines /
 *             hedge <i> <j> lines / root <r>
 * map:        keep <kernel-v> <orig-v> lines, then
 *             shortcut <u> <w> : <path...> lines (kernel endpoints)
 */

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

MoveSequence parse_sequence(const std::string& text);
std::string serialize_sequence(const MoveSequence& seq);

RBDSInstance parse_rbds(const std::string& text);
MSIInstance parse_msi(const std::string& text);

std::string serialize_map(const ContractionMap& map);

/** Whole-file helpers; throw InputError when the file cannot be read/written. */
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tokmove
