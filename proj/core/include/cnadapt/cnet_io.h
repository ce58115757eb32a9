// Copyright 2026 The cnadapt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CNADAPT_CNET_IO_H_
#define CNADAPT_CNET_IO_H_

#include <iosfwd>
#include <string>

#include "cnadapt/confusion_network.h"
#include "cnadapt/vocabulary.h"

namespace cnadapt {

// CNET text format, one conversation per file:
//
//   CONV <conversation-id>
//   NET <utterance-id> <bin-count>
//   BIN <word>:<posterior> <word>:<posterior> ...
//   ...
//
// Words are interned into `vocab` (unknown words are appended). Blank lines
// are ignored. Throws ParseError (with line number) on malformed lines and
// ValidationError on invariant violations such as out-of-range posteriors.
Conversation parse_conversation(std::istream& in, Vocabulary& vocab);
Conversation parse_conversation_file(const std::string& path,
                                     Vocabulary& vocab);

// Byte-stable: canonical cell order, posteriors with trailing zeros trimmed.
void write_conversation(std::ostream& out, const Conversation& conv,
                        const Vocabulary& vocab);
std::string serialize_conversation(const Conversation& conv,
                                   const Vocabulary& vocab);

}  // namespace cnadapt

#endif  // CNADAPT_CNET_IO_H_
