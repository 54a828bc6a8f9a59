from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="cknsym",
    version="1.0.0",
    author="cknsym developers",
    description="Sharp constants, symmetry regions and symmetry-breaking witnesses for "
                "Caffarelli-Kohn-Nirenberg and weighted logarithmic Hardy inequalities",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=("tests",)),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "PyYAML>=6.0",
    ],
    extras_require={
        "test": ["pytest>=7.4.0", "mpmath>=1.3.0"],
    },
    entry_points={
        "console_scripts": [
            "cknsym=cknsym.cli:run",
        ],
    },
)
