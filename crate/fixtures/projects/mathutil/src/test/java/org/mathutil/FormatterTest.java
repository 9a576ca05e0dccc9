package org.mathutil;

import static org.junit.Assert.assertEquals;

import org.junit.Test;

public class FormatterTest {
    @Test
    public void padsToWidth() {
        int width = 5;
        String out = new Formatter().pad(width, "ab");
        assertEquals(5, out.length());
    }
}
