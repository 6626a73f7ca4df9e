#pragma once

#include "votelab/combinatorics.hpp"
#include "votelab/config.hpp"
#include "votelab/constructions.hpp"
#include "votelab/covering.hpp"
#include "votelab/errors.hpp"
#include "votelab/io.hpp"
#include "votelab/profiles.hpp"
#include "votelab/queries.hpp"
#include "votelab/ranking.hpp"
#include "votelab/rational.hpp"
#include "votelab/rules.hpp"
#include "votelab/scoring.hpp"
