#!/usr/bin/env python3
"""Populate data/ with the benchmark datasets.

Iris and Wine are taken from the copies bundled with scikit-learn and written
as headered CSVs (label in the last column). MNIST digits are taken from the
npm `mnist` package (10,000 digits, pixels stored as fractions of 255) and
written as gzip-compressed IDX files.

    python3 tools/prepare_data.py [--mnist-package DIR]

DIR is an unpacked `mnist` npm tarball (`npm pack mnist && tar xzf mnist-*.tgz`).
"""
import argparse
import csv
import gzip
import json
import os
import random
import struct

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "data")

IRIS_FEATURES = ["sepal_length", "sepal_width", "petal_length", "petal_width"]
WINE_FEATURES = [
    "alcohol", "malic_acid", "ash", "alcalinity_of_ash", "magnesium",
    "total_phenols", "flavanoids", "nonflavanoid_phenols", "proanthocyanins",
    "color_intensity", "hue", "od280_od315", "proline",
]


def sklearn_csv(name, features, label_name, out):
    import sklearn

    src = os.path.join(os.path.dirname(sklearn.__file__), "datasets", "data", name)
    with open(src) as f:
        rows = list(csv.reader(f))
    header, body = rows[0], rows[1:]
    classes = header[2:]
    with open(out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(features + [label_name])
        for r in body:
            w.writerow(r[:-1] + [classes[int(r[-1])]])
    print(f"wrote {out} ({len(body)} rows)")


def mnist_idx(package_dir, out_dir, seed=20190214):
    samples = []
    for digit in range(10):
        path = os.path.join(package_dir, "src", "digits", f"{digit}.json")
        with open(path) as f:
            flat = json.load(f)["data"]
        for k in range(len(flat) // 784):
            pixels = bytes(
                max(0, min(255, round(v * 255))) for v in flat[k * 784:(k + 1) * 784]
            )
            samples.append((pixels, digit))
    random.Random(seed).shuffle(samples)
    os.makedirs(out_dir, exist_ok=True)
    images = os.path.join(out_dir, "images-idx3-ubyte.gz")
    labels = os.path.join(out_dir, "labels-idx1-ubyte.gz")
    with gzip.GzipFile(images, "wb", mtime=0) as f:
        f.write(struct.pack(">IIII", 0x00000803, len(samples), 28, 28))
        for pixels, _ in samples:
            f.write(pixels)
    with gzip.GzipFile(labels, "wb", mtime=0) as f:
        f.write(struct.pack(">II", 0x00000801, len(samples)))
        f.write(bytes(d for _, d in samples))
    print(f"wrote {images} and {labels} ({len(samples)} digits)")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--mnist-package", help="unpacked npm `mnist` package directory")
    args = ap.parse_args()
    os.makedirs(DATA, exist_ok=True)
    sklearn_csv("iris.csv", IRIS_FEATURES, "species", os.path.join(DATA, "iris.csv"))
    sklearn_csv("wine_data.csv", WINE_FEATURES, "cultivar", os.path.join(DATA, "wine.csv"))
    if args.mnist_package:
        mnist_idx(args.mnist_package, os.path.join(DATA, "mnist"))


if __name__ == "__main__":
    main()
