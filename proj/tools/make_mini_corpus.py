#!/usr/bin/env python3
#
# Copyright 2026 The Sympel Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Writes the synthetic mini-corpus under data/mini.

Twenty short Spanish case reports (15 train, 5 dev) with symptom
annotations, a gazetteer, a synonym lexicon and a run configuration. The
concept codes are made up. Re-running with the same seed reproduces the
files byte for byte.
"""

import argparse
import os
import random

# code -> surface forms; the first is the gazetteer's preferred term.
CONCEPTS = {
    "900101": ["dolor torácico", "dolor en el pecho", "molestia torácica"],
    "900102": ["fiebre", "pirexia", "hipertermia", "fiebre alta"],
    "900103": ["tos", "tos seca", "tos persistente"],
    "900104": ["disnea", "dificultad respiratoria", "falta de aire"],
    "900105": ["cefalea", "dolor de cabeza", "cefalea intensa"],
    "900106": ["náuseas", "ganas de vomitar"],
    "900107": ["vómitos", "emesis"],
    "900108": ["mareo", "inestabilidad", "sensación de mareo"],
    "900109": ["astenia", "cansancio", "debilidad generalizada"],
    "900110": ["dolor abdominal", "dolor en el abdomen", "molestias abdominales"],
    "900111": ["diarrea", "deposiciones líquidas"],
    "900112": ["prurito", "picor"],
    "900113": ["edema en miembros inferiores", "hinchazón de piernas"],
    "900114": ["palpitaciones", "latidos rápidos"],
    "900115": ["pérdida de peso", "adelgazamiento"],
    "900116": ["dolor lumbar", "lumbalgia", "dolor en la espalda baja"],
    "900117": ["fotofobia"],
    "900118": ["artralgias", "dolor articular"],
    "900119": ["hemoptisis"],
    "900120": ["síncope", "pérdida de conocimiento"],
}

FILLERS = [
    "Se pauta tratamiento con paracetamol.",
    "No refiere antecedentes de interés.",
    "Dr. Pérez valora al paciente en la consulta.",
    "La analítica muestra leucocitosis leve.",
    "Se solicita radiografía de tórax.",
    "El paciente evoluciona de forma favorable.",
    "Se decide ingreso en planta para estudio.",
]

TEMPLATES = [
    "Paciente de {age} años que acude a urgencias por {s0}.",
    "Refiere {s0} y {s1} desde hace {days} días.",
    "A la exploración presenta {s0}.",
    "Niega {s0}.",
    "En las últimas semanas ha presentado {s0}, {s1} y {s2}.",
    "Al alta persiste {s0}.",
    "Consulta por {s0} de {days} días de evolución.",
]


def pick_surface(rng, code, dev):
    forms = CONCEPTS[code]
    surface = rng.choice(forms)
    # Dev mentions sometimes carry a spelling variant absent from the KB.
    if dev and rng.random() < 0.3 and len(surface) > 5:
        i = rng.randrange(1, len(surface) - 1)
        if surface[i].isalpha():
            surface = surface[:i] + surface[i + 1:]
    return surface


def make_document(rng, dev):
    parts = []
    mentions = []
    offset = 0

    def emit(text):
        nonlocal offset
        if parts:
            parts.append(" ")
            offset += 1
        parts.append(text)
        offset += len(text)

    for _ in range(rng.randint(4, 7)):
        if rng.random() < 0.3:
            emit(rng.choice(FILLERS))
            continue
        template = rng.choice(TEMPLATES)
        codes = rng.sample(sorted(CONCEPTS), 3)
        surfaces = [pick_surface(rng, c, dev) for c in codes]
        text = template.format(age=rng.randint(18, 90), days=rng.randint(2, 15),
                               s0=surfaces[0], s1=surfaces[1], s2=surfaces[2])
        if text and text[0].islower():
            text = text[0].upper() + text[1:]
        base = offset + (1 if parts else 0)
        cursor = 0
        for k, (code, surface) in enumerate(zip(codes, surfaces)):
            if "{s%d}" % k not in template:
                continue
            pos = text.find(surface, cursor)
            if pos < 0:
                pos = text.lower().find(surface.lower(), cursor)
            cursor = pos + len(surface)
            mentions.append([base + pos, base + pos + len(surface),
                             text[pos:pos + len(surface)], code])
        emit(text)
    return "".join(parts), mentions


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "data", "mini"))
    parser.add_argument("--seed", type=int, default=20240917)
    args = parser.parse_args()
    rng = random.Random(args.seed)

    out = os.path.normpath(args.out)
    for split in ("train", "dev"):
        os.makedirs(os.path.join(out, split), exist_ok=True)

    header = "filename\tlabel\tstart_span\tend_span\ttext\tcode\n"
    rows = {"train": [], "dev": []}
    nested_added = False
    for n in range(20):
        split = "train" if n < 15 else "dev"
        doc_id = "caso_%02d" % (n + 1)
        text, mentions = make_document(rng, split == "dev")
        if n == 0:
            # One uncoded mention, one composite code and one nested mention.
            mentions[0][3] = ""
            if len(mentions) > 1:
                mentions[1][3] = mentions[1][3] + "+900199"
        with open(os.path.join(out, split, doc_id + ".txt"), "w",
                  encoding="utf-8", newline="\n") as f:
            f.write(text + "\n")
        for start, end, surface, code in mentions:
            rows[split].append((doc_id, start, end, surface, code))
            inner = surface.split(" ")[0]
            if split == "train" and not nested_added and inner != surface:
                rows[split].append((doc_id, start, start + len(inner), inner,
                                    code))
                nested_added = True

    for split in ("train", "dev"):
        with open(os.path.join(out, split + ".tsv"), "w", encoding="utf-8",
                  newline="\n") as f:
            f.write(header)
            for doc_id, start, end, surface, code in rows[split]:
                f.write("%s\tSINTOMA\t%d\t%d\t%s\t%s\n" %
                        (doc_id, start, end, surface, code))

    with open(os.path.join(out, "gazetteer.tsv"), "w", encoding="utf-8",
              newline="\n") as f:
        f.write("code\tterm\n")
        for code in sorted(CONCEPTS):
            for surface in CONCEPTS[code][:2]:
                f.write("%s\t%s\n" % (code, surface))

    with open(os.path.join(out, "lexicon.tsv"), "w", encoding="utf-8",
              newline="\n") as f:
        f.write("code\tsynonym\n")
        for code in sorted(CONCEPTS):
            for surface in CONCEPTS[code]:
                f.write("%s\t%s\n" % (code, surface))

    with open(os.path.join(out, "abbreviations.txt"), "w", encoding="utf-8",
              newline="\n") as f:
        f.write("Dr.\nDra.\nSr.\nSra.\n")


if __name__ == "__main__":
    main()
