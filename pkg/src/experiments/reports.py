import os
import sys
import json
import pandas as pd

CSV_COLUMNS = [
    "g", "family", "seed", "translate_kind", "translate_index", "n_on", "n_off",
    "n_uncertain", "bound_thm1", "bound_thm2", "hyperplane_rank", "sound"
]

def make_save_path(save_path):
    if not os.path.exists(save_path):
        os.makedirs(save_path)
    return save_path

def save_args(arglist, save_path):
    """ Dump parsed flags next to the reports """
    with open(os.path.join(make_save_path(save_path), "args.json"), "w") as f:
        json.dump(vars(arglist), f, indent=2, sort_keys=True)

def save_json(obj, path):
    make_save_path(os.path.dirname(os.path.abspath(path)))
    with open(path, "w") as f:
        json.dump(obj, f, indent=2, sort_keys=True)

def rows_to_frame(rows):
    """ Experiment rows in the fixed column order """
    df = pd.DataFrame(rows, columns=CSV_COLUMNS)
    df["translate_index"] = df["translate_index"].astype("Int64")
    df["seed"] = df["seed"].astype("Int64")
    return df

def write_csv(rows, path=None, append=False):
    """ Write experiment rows to path, or to stdout when path is None

    Args:
        rows (list): dicts with the CSV_COLUMNS keys
        path (str, optional): output file. Default=None
        append (bool, optional): append without header if the file exists. Default=False
    """
    df = rows_to_frame(rows)
    if path is None:
        df.to_csv(sys.stdout, index=False)
        return
    make_save_path(os.path.dirname(os.path.abspath(path)))
    header = not (append and os.path.exists(path))
    df.to_csv(path, index=False, mode="a" if append else "w", header=header)
