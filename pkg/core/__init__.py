"""Motor pletístico: álgebra de series, biálgebra 𝒫, modelo T𝐒 y suites de verificación"""
