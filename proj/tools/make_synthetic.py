#!/usr/bin/env python3
# Copyright 2026 The uiground Authors.
# SPDX-License-Identifier: Apache-2.0
"""Writes the bundled synthetic screen corpus.

Produces detector-style annotations (before grouping), matching PNG
screenshots, a few public-benchmark style records, a mixture spec and a
pipeline config under data/synthetic.
"""

import argparse
import json
import pathlib
import random

from PIL import Image, ImageDraw

WORDS = ("account settings wifi network bluetooth display sound privacy "
         "battery storage photos music news weather calendar notes maps "
         "search profile messages camera update security language help "
         "about backup sync theme dark mode alerts").split()
ICONS = ["search", "settings", "back", "home", "menu", "share", "star",
         "heart", "add", "close", "info", "camera", "bell", "mail"]
BUTTONS = ["Continue", "Sign In", "Save", "Cancel", "Next", "Done", "Retry"]
TABS = ["Home", "Explore", "Library", "Profile"]


def phrase(rng, lo, hi):
  n = rng.randint(lo, hi)
  words = [rng.choice(WORDS) for _ in range(n)]
  words[0] = words[0].capitalize()
  return " ".join(words)


class Screen:

  def __init__(self, screen_id, platform, width, height, split):
    self.screen_id = screen_id
    self.platform = platform
    self.width = width
    self.height = height
    self.split = split
    self.elements = []

  def add(self, ui_type, box, text=None, icon_class=None):
    e = {"id": "e%d" % len(self.elements), "ui_type": ui_type,
         "bbox": [int(v) for v in box]}
    if text is not None:
      e["text"] = text
    if icon_class is not None:
      e["icon_class"] = icon_class
    self.elements.append(e)

  def to_json(self):
    return {"screen_id": self.screen_id, "platform": self.platform,
            "width": self.width, "height": self.height, "split": self.split,
            "image_path": self.screen_id + ".png",
            "detector": "synthetic-v1", "elements": self.elements}


def build_screen(rng, index, platform, rows, landscape=False):
  w, h = (390, 844) if platform == "iphone" else (412, 915)
  if landscape:
    w, h = h, w
  s = Screen("%s_%02d" % (platform, index), platform, w, h, "train")
  margin = 16
  s.add("Text", (margin, 48, w // 2, 76), text=phrase(rng, 1, 3))
  y = 100
  if rows == 0:
    s.add("Button", (margin, h - 90, w - margin, h - 46), text=rng.choice(BUTTONS))
    return s
  # A wrapped paragraph: two text lines that belong together.
  if index % 3 == 0:
    s.add("Text", (margin, y, w - margin, y + 20), text=phrase(rng, 4, 7))
    s.add("Text", (margin, y + 24, w - 3 * margin, y + 44), text=phrase(rng, 2, 5))
    y += 64
  # A picture with a caption under it.
  if index % 4 == 1 and not landscape:
    s.add("Picture", (margin, y, w - margin, y + 140))
    s.add("Text", (margin + 8, y + 146, w // 2, y + 166), text=phrase(rng, 2, 4))
    y += 186
  row_h = 52 if not landscape else 40
  for r in range(rows):
    if y + row_h > h - 120:
      break
    s.add("Icon", (margin, y + 10, margin + 28, y + 38), icon_class=rng.choice(ICONS))
    label = phrase(rng, 1, 12) if r % 4 else phrase(rng, 1, 2)
    s.add("Text", (margin + 44, y + 14, w - 120, y + 34), text=label)
    kind = r % 3
    if kind == 1:
      state = rng.choice(["Checked", "Unchecked"])
      s.add("Toggle (%s)" % state, (w - 76, y + 12, w - margin, y + 40))
    elif kind == 2:
      state = rng.choice(["Checked", "Unchecked"])
      s.add("Checkbox (%s)" % state, (w - 48, y + 14, w - margin - 4, y + 38))
    y += row_h
  s.add("Button", (margin, h - 110, w - margin, h - 66), text=rng.choice(BUTTONS))
  if index % 2 == 0:
    tab_w = (w - 2 * margin) // len(TABS)
    for t, name in enumerate(TABS[:2]):
      x = margin + t * tab_w
      s.add("Tab", (x, h - 54, x + tab_w - 4, h - 10), text=name)
  return s


def draw(screen, path):
  img = Image.new("RGB", (screen.width, screen.height), (250, 250, 250))
  d = ImageDraw.Draw(img)
  colors = {"Button": (40, 110, 230), "Icon": (120, 120, 130),
            "Picture": (180, 200, 160), "Tab": (225, 225, 235)}
  for e in screen.elements:
    x1, y1, x2, y2 = e["bbox"]
    kind = e["ui_type"].split(" ")[0]
    if kind == "Text":
      d.text((x1, y1 + 2), e["text"], fill=(20, 20, 20))
    elif kind == "Icon":
      d.ellipse((x1, y1, x2 - 1, y2 - 1), fill=colors["Icon"])
    elif kind in ("Toggle", "Checkbox"):
      on = "(Checked)" in e["ui_type"]
      d.rounded_rectangle((x1, y1, x2 - 1, y2 - 1), radius=6,
                          fill=(60, 180, 90) if on else (200, 200, 200))
    else:
      d.rectangle((x1, y1, x2 - 1, y2 - 1), fill=colors.get(kind, (200, 200, 200)))
      if e.get("text"):
        d.text((x1 + 8, y1 + 8), e["text"], fill=(255, 255, 255))
  img.save(path, optimize=False)


def main():
  parser = argparse.ArgumentParser(description=__doc__)
  parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parents[1] /
                                               "data" / "synthetic"))
  parser.add_argument("--seed", type=int, default=2026)
  args = parser.parse_args()
  rng = random.Random(args.seed)
  out = pathlib.Path(args.out)
  (out / "images").mkdir(parents=True, exist_ok=True)

  # Row counts chosen to cover the advanced-task eligibility boundaries.
  plan = [0, 1, 2, 3, 4, 5, 2, 3, 4, 9]
  screens = []
  for platform in ("iphone", "android"):
    for i, rows in enumerate(plan):
      landscape = platform == "iphone" and i in (4, 7)
      screens.append(build_screen(rng, i, platform, rows, landscape))
  # Same text twice on one screen: excluded from find_text.
  dup = screens[3]
  dup.add("Text", (16, 780, 200, 800), text=dup.elements[0]["text"])

  with open(out / "screens.jsonl", "w") as f:
    for s in screens:
      f.write(json.dumps(s.to_json(), sort_keys=True) + "\n")
      draw(s, out / "images" / (s.screen_id + ".png"))

  records = []
  android = [s for s in screens if s.platform == "android"]
  for k, s in enumerate(android):
    split = "test" if k % 5 == 4 else "train"
    records.append({"record_id": "s2w_%02d" % k, "task": "screen2words",
                    "screen_id": s.screen_id, "image": s.screen_id + ".png",
                    "width": s.width, "height": s.height,
                    "answer": "a screen showing " + s.elements[0]["text"].lower(),
                    "split": split})
    target = s.elements[-1]
    records.append({"record_id": "wic_%02d" % k, "task": "widget_captions",
                    "screen_id": s.screen_id, "image": s.screen_id + ".png",
                    "width": s.width, "height": s.height, "bbox": target["bbox"],
                    "answer": "tap to " + (target.get("text") or "continue").lower(),
                    "split": split})
    records.append({"record_id": "tap_%02d" % k, "task": "taperception",
                    "screen_id": s.screen_id, "image": s.screen_id + ".png",
                    "width": s.width, "height": s.height, "bbox": s.elements[0]["bbox"],
                    "answer": k % 2 == 0, "split": split})
  with open(out / "spotlight.jsonl", "w") as f:
    for r in records:
      f.write(json.dumps(r, sort_keys=True) + "\n")

  mixture = {"total": 36, "seed": 11, "with_replacement": False,
             "pools": [
                 {"name": "iphone_find_text", "path": "elementary/iphone/find_text.train.jsonl",
                  "weight": 1},
                 {"name": "android_ocr", "path": "elementary/android/ocr.train.jsonl",
                  "weight": 1},
                 {"name": "conv_interaction", "path": "advanced/conv_interaction.jsonl",
                  "weight": 1}]}
  (out / "mixture.json").write_text(json.dumps(mixture, indent=2) + "\n")

  config = {"seed": 7, "annotations": "screens.jsonl", "images": "images",
            "output": "out", "spotlight": "spotlight.jsonl",
            "fixtures": "fixtures/advgen", "mixture": "mixture.json",
            "partition": True, "som": {"enabled": True, "stroke": 4, "font_size": 14},
            "stats": {"role": "both", "top_k": 20}}
  (out / "pipeline.json").write_text(json.dumps(config, indent=2) + "\n")


if __name__ == "__main__":
  main()
