#pragma once

#include "acnc/errors.hpp"
#include "acnc/gaussian.hpp"
#include "acnc/operations.hpp"
#include "acnc/coherence.hpp"
#include "acnc/protocol.hpp"
#include "acnc/csv_format.hpp"
#include "acnc/circuit.hpp"
#include "acnc/figures.hpp"
