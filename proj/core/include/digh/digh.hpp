#pragma once

#include "digh/diffusion_wavelets.hpp"
#include "digh/errors.hpp"
#include "digh/filters.hpp"
#include "digh/graph.hpp"
#include "digh/io.hpp"
#include "digh/laplacians.hpp"
#include "digh/parallel.hpp"
#include "digh/random.hpp"
#include "digh/random_walk.hpp"
#include "digh/spectral.hpp"
#include "digh/ssl.hpp"
#include "digh/wavelet_frame.hpp"
