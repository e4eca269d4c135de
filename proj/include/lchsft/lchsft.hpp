#pragma once

#include "lchsft/errors.hpp"
#include "lchsft/gf2.hpp"
#include "lchsft/complex.hpp"
#include "lchsft/sequence.hpp"
#include "lchsft/spectral.hpp"
#include "lchsft/rational.hpp"
#include "lchsft/dga.hpp"
#include "lchsft/augmentation.hpp"
#include "lchsft/sft.hpp"
#include "lchsft/floer.hpp"
#include "lchsft/duality.hpp"
#include "lchsft/format.hpp"
#include "lchsft/report.hpp"
#include "lchsft/selftest.hpp"
