#ifndef HYPWORD_HPP_
#define HYPWORD_HPP_

#include "hypword/automata.hpp"
#include "hypword/automata_io.hpp"
#include "hypword/core.hpp"
#include "hypword/earley.hpp"
#include "hypword/error.hpp"
#include "hypword/grammar.hpp"
#include "hypword/grammar_io.hpp"
#include "hypword/rewriting.hpp"
#include "hypword/structures.hpp"
#include "hypword/system_io.hpp"
#include "hypword/theta.hpp"

#endif  // HYPWORD_HPP_
