from glob import glob
from setuptools import setup

_src_folder = '.'
_pkg_name = 'siteflow'


def readme():
    with open('README.md') as f:
        return f.read()


def get_requirements(fname='requirements.txt'):
    with open(fname, 'r') as fopen:
        return [line for line in fopen.read().splitlines()
                if line and not line.startswith('#')]


setup(
    name="siteflow",
    version='0.3.0',
    description="Budgeted site selection for renewable energy generation",
    long_description=readme(),
    long_description_content_type='text/markdown',
    license="Apache 2.0",

    packages=[f"{_pkg_name}",
              f"{_pkg_name}.solvers",
              f"{_pkg_name}.management",
              f"{_pkg_name}.management.commands"],
    package_dir={f"{_pkg_name}": f"{_src_folder}/{_pkg_name}"},

    package_data={f"{_pkg_name}": [i.replace(f'{_src_folder}/{_pkg_name}/', '')
                                   for i in glob(f'{_src_folder}/{_pkg_name}/**',
                                                 recursive=True)]
    },
    entry_points={
        'console_scripts': ['siteflow=siteflow.cli:main'],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Framework :: Django",
        "Framework :: Django :: 3.2",
        "Framework :: Django :: 4.2",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
        ],
    python_requires='>=3.9',
    install_requires=get_requirements(),
    zip_safe=False,
    )
