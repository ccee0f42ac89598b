#pragma once

// Umbrella header for the V-DNA fountain codec library.

#include "vdna/channel.hpp"
#include "vdna/codebook.hpp"
#include "vdna/constraints.hpp"
#include "vdna/error.hpp"
#include "vdna/fasta.hpp"
#include "vdna/gf2.hpp"
#include "vdna/oligo.hpp"
#include "vdna/params.hpp"
#include "vdna/pipeline.hpp"
#include "vdna/randomness.hpp"
#include "vdna/raptor.hpp"
