#!/usr/bin/env python3
"""Convert the npm `fashion-mnist` per-class JSON files to IDX files.

The package ships 10 files, one per class, each holding 7002 flattened
28x28 images. The first 6000 images of each class become the training
split and the following 1000 the test split; the trailing 2 images are
dropped so the splits stay exactly class balanced. Images that are not
784 bytes long (the package ships one empty entry) are discarded first.

usage: fashion_to_idx.py <clothes-dir> <out-dir>
"""

import json
import os
import struct
import sys

TRAIN_PER_CLASS = 6000
TEST_PER_CLASS = 1000
SIDE = 28


def write_idx(out_dir, prefix, images, labels):
    with open(os.path.join(out_dir, prefix + "-images-idx3-ubyte"), "wb") as f:
        f.write(struct.pack(">IIII", 0x803, len(images), SIDE, SIDE))
        for img in images:
            f.write(bytes(img))
    with open(os.path.join(out_dir, prefix + "-labels-idx1-ubyte"), "wb") as f:
        f.write(struct.pack(">II", 0x801, len(labels)))
        f.write(bytes(labels))


def main():
    if len(sys.argv) != 3:
        print(__doc__.strip(), file=sys.stderr)
        return 1
    src, out_dir = sys.argv[1], sys.argv[2]
    os.makedirs(out_dir, exist_ok=True)
    train_images, train_labels = [], []
    test_images, test_labels = [], []
    for cls in range(10):
        with open(os.path.join(src, f"{cls}.json")) as f:
            data = json.load(f)["data"]
        data = [img for img in data if len(img) == SIDE * SIDE]
        if len(data) < TRAIN_PER_CLASS + TEST_PER_CLASS:
            print(f"class {cls}: only {len(data)} images", file=sys.stderr)
            return 1
        for img in data[:TRAIN_PER_CLASS]:
            train_images.append(img)
            train_labels.append(cls)
        for img in data[TRAIN_PER_CLASS:TRAIN_PER_CLASS + TEST_PER_CLASS]:
            test_images.append(img)
            test_labels.append(cls)
    write_idx(out_dir, "train", train_images, train_labels)
    write_idx(out_dir, "t10k", test_images, test_labels)
    print(f"wrote {len(train_images)} train and {len(test_images)} test images to {out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
