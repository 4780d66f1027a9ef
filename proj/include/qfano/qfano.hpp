#pragma once

// Umbrella header for the whole toolkit (the JSONL encoding is separate, in
// qfano/jsonl.hpp, to keep the core free of the JSON dependency).

#include "qfano/ledger.hpp"
#include "qfano/rational.hpp"
#include "qfano/riemann_roch.hpp"
#include "qfano/search.hpp"
#include "qfano/singularity.hpp"
#include "qfano/weights.hpp"
