#pragma once

#include "mrakit/error.hpp"
#include "mrakit/fixtures.hpp"
#include "mrakit/io.hpp"
#include "mrakit/mra.hpp"
#include "mrakit/sequence.hpp"
#include "mrakit/signal.hpp"
#include "mrakit/spectra.hpp"
#include "mrakit/wavelet.hpp"
