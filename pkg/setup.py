from setuptools import setup, find_packages

setup(
    name="torsion_growth",
    version="0.1.0",
    packages=find_packages(exclude=("tests", "examples", "examples.*")),
    install_requires=[
        "numpy>=1.21.0",
        "typing-extensions>=4.0.0",
        "sympy>=1.12",
        "mpmath>=1.3.0",
    ],
    extras_require={
        "test": ["pytest>=7.0", "hypothesis>=6.0"],
    },
    entry_points={
        "console_scripts": ["torsion-growth=torsion_growth.interface.cli:main"],
    },
    description="Exact cohomology, Reidemeister torsion and torsion growth for arithmetic groups",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.10",
)
