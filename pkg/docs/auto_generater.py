# -*- coding: utf-8 -*-

import importlib
import inspect
import os


def get_class_funcs(module):
    classes, functions, others = [], [], []
    if "__all__" in module.__dict__:
        names = module.__dict__["__all__"]
    else:
        names = [x for x in module.__dict__ if not x.startswith("_")]
    for k in names:
        data = getattr(module, k)
        if not inspect.ismodule(data) and not k.startswith("_"):
            if inspect.isfunction(data):
                functions.append(k)
            elif isinstance(data, type):
                classes.append(k)
            else:
                others.append(k)

    return classes, functions, others


def _write_sections(module_path, out_path, filename, subsections: dict, header: str = None):
    header = f'``{out_path}`` module' if header is None else header
    lines = [header, '=' * len(header), '',
             f'.. currentmodule:: {out_path}', f'.. automodule:: {out_path}', '',
             '.. contents::', '   :local:', '   :depth: 1', '']
    for name, subheader in subsections.items():
        classes, functions, others = get_class_funcs(importlib.import_module(f'{module_path}.{name}'))
        lines += [subheader, '-' * len(subheader), '']
        if functions:
            lines += ['.. autosummary::', '   :toctree: generated/', '   :nosignatures:', '']
            lines += [f'   {m}' for m in functions + others] + ['']
        if classes:
            lines += ['.. autosummary::', '   :toctree: generated/', '   :nosignatures:',
                      '   :template: classtemplate.rst', '']
            lines += [f'   {m}' for m in classes] + ['']
        lines.append('')
    with open(filename, 'w') as fout:
        fout.write('\n'.join(lines))


def main():
    os.makedirs('apis/', exist_ok=True)

    _write_sections(
        module_path='schurample',
        out_path='schurample',
        filename='apis/schurample.rst',
        subsections={
            '_partition': 'Partitions and Schur Functors',
            '_scalar': 'Scalar Fields',
            '_poly': 'Homogeneous Polynomials and Charts',
            '_universal': 'Universal Family',
            '_strata': 'Strata and the Rank of the Parameter Map',
            '_plucker': 'Plücker Coordinates',
            '_bounds': 'Effective Degree Bounds',
            '_audit': 'Verification Suites',
            '_errors': 'Errors',
        },
    )


if __name__ == '__main__':
    main()
