#pragma once

#include "tts/align/ctc.hpp"
#include "tts/align/durations.hpp"
#include "tts/align/monotonic_path.hpp"
#include "tts/corpus/config_file.hpp"
#include "tts/corpus/durations_file.hpp"
#include "tts/corpus/manifest.hpp"
#include "tts/corpus/matrix_file.hpp"
#include "tts/corpus/pipeline.hpp"
#include "tts/corpus/stats.hpp"
#include "tts/dsp/mel.hpp"
#include "tts/dsp/normalize.hpp"
#include "tts/dsp/resample.hpp"
#include "tts/dsp/trim.hpp"
#include "tts/dsp/waveform.hpp"
#include "tts/losses/combined.hpp"
#include "tts/losses/huber.hpp"
#include "tts/losses/l1.hpp"
#include "tts/losses/ssim.hpp"
#include "tts/matrix.hpp"
#include "tts/text/cardinal.hpp"
#include "tts/text/g2p.hpp"
#include "tts/text/inventory.hpp"
#include "tts/text/normalize.hpp"
#include "tts/upsample/positional.hpp"
#include "tts/upsample/upsample.hpp"
