#pragma once

#include "recal/types.hpp"
#include "recal/dsv.hpp"
#include "recal/registry.hpp"
#include "recal/corpus.hpp"
#include "recal/corpus_io.hpp"
#include "recal/counting.hpp"
#include "recal/threshold.hpp"
#include "recal/recalibration.hpp"
#include "recal/evaluation.hpp"
#include "recal/synthgen.hpp"
#include "recal/earth_sciences.hpp"
#include "recal/config.hpp"
